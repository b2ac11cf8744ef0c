#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "flexlines/cubic_recon.hpp"
#include "flexlines/quartic_lab.hpp"

namespace flex::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string field = "q";
  std::string output = "text";
  std::uint64_t seed = 0;
  bool allow_extension = false;
  std::string direction;
  int pairs = 20;
  std::vector<std::string> payload;
};

struct Report {
  json input = json::object();
  json result;
  std::string text;
};

// "@path" reads the payload from a file.
std::string payload_text(const std::string& arg) {
  if (arg.empty() || arg.front() != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw UsageError("cannot read " + arg.substr(1));
  std::stringstream buf;
  buf << in.rdbuf();
  std::string s = buf.str();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

void require_arity(const Options& o, std::size_t lo, std::size_t hi, const std::string& what) {
  if (o.payload.size() < lo || o.payload.size() > hi) throw UsageError("expected " + what);
}

Scalar parse_scalar(const Field& f, const std::string& s) {
  HomogeneousPoly p = HomogeneousPoly::parse(f, s);
  if (p.degree() != 0) throw Error(ErrorCode::ParseError, "expected a constant, got \"" + s + "\"");
  return p.coeff(0, 0, 0);
}

ProjPoint parse_point(const Field& f, std::string s) {
  for (char& c : s)
    if (c == '[' || c == ']' || c == ':') c = c == ':' ? ',' : ' ';
  std::vector<Scalar> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(parse_scalar(f, item));
  if (parts.size() != 3) throw Error(ErrorCode::ParseError, "expected three coordinates in \"" + s + "\"");
  return ProjPoint(parts[0], parts[1], parts[2]);
}

json point_json(const ProjPoint& p) {
  return json::array({p[0].to_string(), p[1].to_string(), p[2].to_string()});
}

std::string format_line(const LineEntry& e) {
  return e.line.to_string() + " x" + std::to_string(e.multiplicity) + " " + std::string(kind_name(e.kind));
}

std::string configuration_text(const LineConfiguration& cfg) {
  std::string out;
  for (const auto& e : cfg.entries()) out += "  " + format_line(e) + "\n";
  if (cfg.residual_degree() > 0) out += "  residual of degree " + std::to_string(cfg.residual_degree()) + ": " +
                                       cfg.residual().to_string() + "\n";
  out += "  total " + std::to_string(cfg.total_multiplicity()) + " of " + std::to_string(cfg.expected_total()) +
         (cfg.complete() ? ", complete" : ", incomplete over the base field") + "\n";
  return out;
}

LineKind kind_from_name(const std::string& s) {
  for (LineKind k : {LineKind::type0, LineKind::type1, LineKind::degenerate, LineKind::unknown})
    if (kind_name(k) == s) return k;
  throw Error(ErrorCode::ParseError, "unknown line kind \"" + s + "\"");
}

json singularities_json(const SingularLocus& locus) {
  json pts = json::array();
  for (const auto& info : locus.points) {
    json cone = json::array();
    for (const auto& [l, m] : info.tangent_cone) cone.push_back({{"line", point_json(l)}, {"multiplicity", m}});
    pts.push_back({{"point", point_json(info.point)},
                   {"kind", kind_name(info.kind)},
                   {"tangent_cone", cone},
                   {"irreducible_cone", info.irreducible_cone ? json(info.irreducible_cone->to_string()) : json()}});
  }
  return {{"points", pts}, {"residual_points", locus.residual_points}};
}

std::string singularities_text(const SingularLocus& locus) {
  std::string out;
  for (const auto& info : locus.points) {
    out += "  " + info.point.to_string() + " " + std::string(kind_name(info.kind));
    for (const auto& [l, m] : info.tangent_cone) out += " cone " + l.to_string() + "^" + std::to_string(m);
    if (info.irreducible_cone) out += " cone " + info.irreducible_cone->to_string();
    out += "\n";
  }
  if (locus.residual_points > 0)
    out += "  " + std::to_string(locus.residual_points) + " singular points outside the base field\n";
  return out;
}

constexpr int kMaxCurveDegree = 24;

PlaneCurve parse_curve(const Field& f, const std::string& text) {
  PlaneCurve c = PlaneCurve::parse(f, text);
  if (c.degree() > kMaxCurveDegree)
    throw Error(ErrorCode::InvalidInput, "curve degree " + std::to_string(c.degree()) + " exceeds " +
                                             std::to_string(kMaxCurveDegree));
  return c;
}

PlaneCurve curve_arg(const Field& f, const Options& o, std::size_t i, Report& r, const std::string& key = "curve") {
  PlaneCurve c = parse_curve(f, payload_text(o.payload[i]));
  r.input[key] = c.to_string();
  return c;
}

Report cmd_inflections(const Field& f, const Options& o) {
  require_arity(o, 1, 1, "one curve");
  Report r;
  InflectionResult res = inflection_scheme(curve_arg(f, o, 0, r));
  json flexes = json::array();
  for (const auto& [p, m] : res.points) flexes.push_back({{"point", point_json(p)}, {"multiplicity", m}});
  r.result = {{"flexes", flexes},
              {"lines", configuration_to_json(res.lines)},
              {"total_over_closure", res.total_multiplicity}};
  r.text = "inflection lines:\n" + configuration_text(res.lines) +
           "total over the closure: " + std::to_string(res.total_multiplicity) + "\n";
  return r;
}

Report cmd_dual(const Field& f, const Options& o) {
  require_arity(o, 1, 1, "one curve");
  Report r;
  PlaneCurve d = dual_curve(curve_arg(f, o, 0, r));
  r.result = {{"dual", d.to_string()}, {"degree", d.degree()}};
  r.text = "dual curve of degree " + std::to_string(d.degree()) + ": " + d.to_string() + "\n";
  return r;
}

Report cmd_singularities(const Field& f, const Options& o) {
  require_arity(o, 1, 1, "one curve");
  Report r;
  SingularLocus locus = singular_points(curve_arg(f, o, 0, r));
  r.result = singularities_json(locus);
  r.text = locus.points.empty() && locus.residual_points == 0 ? "smooth\n" : "singular points:\n" + singularities_text(locus);
  return r;
}

Report cmd_j(const Field& f, const Options& o) {
  require_arity(o, 1, 1, "one cubic");
  Report r;
  PlaneCurve c = curve_arg(f, o, 0, r);
  const Scalar j = j_invariant(c);
  r.result = {{"j", j.to_string()}};
  r.text = "j = " + j.to_string() + "\n";
  if (f.is_finite()) {
    const Scalar h = hasse_invariant(c.form());
    r.result["hasse_invariant"] = h.to_string();
    r.result["supersingular"] = h.is_zero();
    r.text += std::string(h.is_zero() ? "supersingular" : "ordinary") + "\n";
  }
  return r;
}

Report cmd_hesse(const Field& f, const Options& o) {
  require_arity(o, 1, 1, "one parameter");
  Report r;
  const Scalar lambda = parse_scalar(f, payload_text(o.payload[0]));
  r.input["lambda"] = lambda.to_string();
  HesseMember m = hesse_member(lambda);
  r.result = {{"curve", m.curve.to_string()}, {"lines", configuration_to_json(m.lines)}};
  r.text = "curve: " + m.curve.to_string() + "\ninflection lines:\n" + configuration_text(m.lines);
  return r;
}

std::vector<ProjPoint> nine_points(const Field& f, const Options& o) {
  std::vector<ProjPoint> pts;
  if (o.payload.size() == 1) {
    const std::string text = payload_text(o.payload[0]);
    if (text.find_first_of("[{") == std::string::npos) throw UsageError("expected nine points or one record list");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw UsageError(std::string("record list is not valid JSON: ") + e.what());
    }
    const LineConfiguration records = configuration_from_json(f, j);
    for (const auto& e : records.entries()) pts.push_back(e.line);
    if (pts.size() != 9) throw Error(ErrorCode::InvalidInput, "expected 9 distinct points, got " + std::to_string(pts.size()));
    return pts;
  }
  require_arity(o, 9, 9, "nine points or one record list");
  for (const auto& s : o.payload) pts.push_back(parse_point(f, payload_text(s)));
  return pts;
}

Report cmd_reconstruct(const Field& f, const Options& o) {
  Report r;
  NinePointInput input(nine_points(f, o));
  json in = json::array();
  for (const auto& p : input.points()) in.push_back(point_json(p));
  r.input["points"] = in;
  Reconstruction rec = reconstruct(input, o.allow_extension);
  r.result = {{"cubic", rec.cubic.to_string()},
              {"dual", rec.dual.to_string()},
              {"verification", {{"recovered_lines", configuration_to_json(rec.lines)}, {"missing", json::array()}, {"extra", json::array()}}}};
  if (f.characteristic() == 2) r.result["cubics_dimension"] = rec.cubics_dimension;
  r.text = "cubic: " + rec.cubic.to_string() + "\nvia: " + rec.dual.to_string() +
           "\nverified: the inflection lines of the cubic are the nine input points\n";
  return r;
}

json class_json(const QuarticClass& q) {
  json comps = json::array();
  for (const auto& c : q.components()) comps.push_back({{"form", c.form.to_string()}, {"degree", c.degree}});
  return {{"vclass_member", q.vclass_member()},
          {"rejection_reason", q.rejection_reason()},
          {"components", comps},
          {"singularities", singularities_json(q.singularities())}};
}

Report cmd_quartic_config(const Field& f, const Options& o) {
  require_arity(o, 1, 1, "one quartic");
  Report r;
  QuarticClass q(curve_arg(f, o, 0, r));
  LineConfiguration cfg = table_configuration(q);
  r.result = {{"class", class_json(q)}, {"configuration", configuration_to_json(cfg)}};
  r.text = "singular points:\n" + singularities_text(q.singularities()) + "configuration:\n" + configuration_text(cfg);
  return r;
}

Report cmd_limit_config(const Field& f, const Options& o) {
  require_arity(o, 1, 1, "one quartic");
  Report r;
  PlaneCurve c = curve_arg(f, o, 0, r);
  std::optional<SmoothingPencil> pencil;
  if (!o.direction.empty()) {
    pencil.emplace(c, HomogeneousPoly::parse(f, payload_text(o.direction)));
  } else {
    std::mt19937_64 rng(o.seed);
    for (int attempt = 0; attempt < 20 && !pencil; ++attempt) {
      HomogeneousPoly d(f, 4);
      for (int i = 4; i >= 0; --i)
        for (int j = 4 - i; j >= 0; --j) d.set(i, j, 4 - i - j, f.random(rng));
      try {
        pencil.emplace(c, d);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GenericMemberSingular) throw;
      }
    }
    if (!pencil) throw Error(ErrorCode::GenericMemberSingular, "no smoothing direction found");
  }
  r.input["direction"] = pencil->direction().to_string();
  LineConfiguration lim = limit_configuration(*pencil);
  r.result = {{"configuration", configuration_to_json(lim)}};
  r.text = "direction: " + pencil->direction().to_string() + "\nlimit configuration:\n" + configuration_text(lim);
  QuarticClass q(c);
  if (q.vclass_member()) {
    const bool agrees = table_configuration(q).same_lines(lim);
    r.result["agrees_with_table"] = agrees;
    r.text += std::string("table: ") + (agrees ? "agrees" : "DIFFERS") + "\n";
  }
  return r;
}

Report cmd_git_check(const Field& f, const Options& o) {
  require_arity(o, 1, 1, "one configuration or quartic");
  Report r;
  const std::string text = payload_text(o.payload[0]);
  LineConfiguration cfg;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw UsageError(std::string("configuration is not valid JSON: ") + e.what());
    }
    cfg = configuration_from_json(f, j);
    r.input["configuration"] = configuration_to_json(cfg);
  } else {
    PlaneCurve c = parse_curve(f, text);
    r.input["curve"] = c.to_string();
    cfg = is_smooth(c) ? inflection_scheme(c).lines : table_configuration(QuarticClass(c));
  }
  const LineConfiguration split = split_over_extension(cfg);
  GitReport g = git_check(split);
  json point = g.heaviest_point ? json{{"point", point_json(*g.heaviest_point)}, {"weight", g.point_weight}} : json();
  r.result = {{"verdict", verdict_name(g.verdict)},
              {"field", split.field().spec()},
              {"heaviest_line", {{"line", point_json(g.heaviest_line)}, {"weight", g.line_weight}}},
              {"heaviest_point", point}};
  r.text = std::string(verdict_name(g.verdict)) + "\nheaviest line " + g.heaviest_line.to_string() + " weight " +
           std::to_string(g.line_weight) + "\n";
  if (g.heaviest_point)
    r.text += "heaviest point " + g.heaviest_point->to_string() + " weight " + std::to_string(g.point_weight) + "\n";
  if (split.field() != f) r.text += "lines split over " + split.field().spec() + "\n";
  return r;
}

Report cmd_uniqueness(const Field& f, const Options& o) {
  Report r;
  if (!o.payload.empty()) {
    require_arity(o, 2, 2, "two curves or none");
    QuarticClass q1(curve_arg(f, o, 0, r, "first")), q2(curve_arg(f, o, 1, r, "second"));
    UniquenessReport u = uniqueness_experiment(q1, q2);
    r.result = {{"configs_equal", u.configs_equal}, {"curves_equal", u.curves_equal}};
    r.text = std::string("configurations ") + (u.configs_equal ? "equal" : "differ") + ", curves " +
             (u.curves_equal ? "equal" : "differ") + "\n";
    return r;
  }
  if (o.pairs < 1) throw UsageError("--pairs must be positive");
  std::mt19937_64 rng(o.seed);
  r.input = {{"pairs", o.pairs}, {"rng_seed", o.seed}};
  int distinct = 0, collisions = 0;
  json counterexamples = json::array();
  for (int i = 0; i < o.pairs; ++i) {
    QuarticClass q1(sample_nodal_cubic_plus_line(f, rng)), q2(sample_nodal_cubic_plus_line(f, rng));
    UniquenessReport u = uniqueness_experiment(q1, q2);
    if (!u.curves_equal) ++distinct;
    if (u.configs_equal && !u.curves_equal) {
      ++collisions;
      counterexamples.push_back({q1.curve().to_string(), q2.curve().to_string()});
    }
  }
  r.result = {{"distinct_pairs", distinct}, {"equal_configurations", collisions}, {"counterexamples", counterexamples}};
  r.text = std::to_string(distinct) + " distinct pairs, " + std::to_string(collisions) +
           " with equal configurations\n";
  return r;
}

using Command = Report (*)(const Field&, const Options&);

const std::vector<std::pair<std::string, Command>>& commands() {
  static const std::vector<std::pair<std::string, Command>> table = {
      {"inflections", cmd_inflections}, {"dual", cmd_dual},
      {"singularities", cmd_singularities}, {"j", cmd_j},
      {"hesse", cmd_hesse}, {"reconstruct", cmd_reconstruct},
      {"quartic-config", cmd_quartic_config}, {"limit-config", cmd_limit_config},
      {"git-check", cmd_git_check}, {"uniqueness-exp", cmd_uniqueness}};
  return table;
}

const char* description(const std::string& name) {
  if (name == "inflections") return "Inflection lines of a smooth curve";
  if (name == "dual") return "Dual curve";
  if (name == "singularities") return "Singular points with their type and tangent cone";
  if (name == "j") return "j-invariant (and Hasse invariant) of a smooth cubic";
  if (name == "hesse") return "Hesse pencil member x^3+y^3+z^3-3*lambda*x*y*z and its inflection lines";
  if (name == "reconstruct") return "Smooth cubic from its nine inflection lines";
  if (name == "quartic-config") return "Inflection line configuration of a quartic from its singularities";
  if (name == "limit-config") return "Limit of the inflection lines along a smoothing pencil";
  if (name == "git-check") return "GIT stability of a degree-24 line configuration";
  return "Compare configurations of nodal cubic plus line curves";
}

}  // namespace

json configuration_to_json(const LineConfiguration& cfg) {
  json lines = json::array();
  for (const auto& e : cfg.entries())
    lines.push_back({{"a", e.line[0].to_string()},
                     {"b", e.line[1].to_string()},
                     {"c", e.line[2].to_string()},
                     {"multiplicity", e.multiplicity},
                     {"kind", kind_name(e.kind)}});
  return {{"ambient_degree", cfg.ambient_degree()},
          {"lines", lines},
          {"residual", {{"form", cfg.residual_degree() > 0 ? cfg.residual().to_string() : "1"},
                        {"degrees", cfg.residual_degrees()}}},
          {"total", cfg.total_multiplicity()},
          {"expected_total", cfg.expected_total()},
          {"complete", cfg.complete()}};
}

LineConfiguration configuration_from_json(const Field& f, const json& j) {
  try {
    const json& records = j.is_array() ? j : j.at("lines");
    const int degree = j.is_object() && j.contains("ambient_degree") ? j.at("ambient_degree").get<int>() : 4;
    if (degree < 1 || degree > 64) throw Error(ErrorCode::InvalidInput, "ambient degree out of range");
    LineConfiguration cfg(f, degree);
    for (const auto& rec : records) {
      const ProjLine l(parse_scalar(f, rec.at("a").get<std::string>()), parse_scalar(f, rec.at("b").get<std::string>()),
                       parse_scalar(f, rec.at("c").get<std::string>()));
      const int m = rec.contains("multiplicity") ? rec.at("multiplicity").get<int>() : 1;
      if (m < 1) throw Error(ErrorCode::InvalidInput, "multiplicity must be positive");
      cfg.add(l, m, rec.contains("kind") ? kind_from_name(rec.at("kind").get<std::string>()) : LineKind::unknown);
    }
    if (j.is_object() && j.contains("residual")) {
      const json& res = j.at("residual");
      HomogeneousPoly form = HomogeneousPoly::parse(f, res.at("form").get<std::string>());
      if (form.degree() > 0) cfg.set_residual(form, res.at("degrees").get<std::vector<int>>());
    }
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed configuration record: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inflection lines of plane curves over exact fields", "flexlines"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "Field: q, gf:p, gf:p:k or gf:p:poly=c0,...,1")->capture_default_str();
  app.add_option("--output", o.output, "Output mode")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();
  app.add_option("--rng-seed", o.seed, "Seed for sampled directions and experiments")->capture_default_str();
  app.add_flag("--allow-extension", o.allow_extension, "Solve a non-split cusp condition over the quadratic extension");
  app.add_option("--direction", o.direction, "Pencil direction for limit-config (quartic)");
  app.add_option("--pairs", o.pairs, "Random pairs for uniqueness-exp without curves")->capture_default_str();
  std::string chosen;
  for (const auto& [name, fn] : commands()) {
    (void)fn;
    CLI::App* sub = app.add_subcommand(name, description(name));
    sub->add_option("payload", o.payload, "Polynomials, points \"a,b,c\", a JSON record list, or @file");
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  // CLI11 splits "[a,b]" arguments into lists; a leading marker keeps JSON and points intact.
  constexpr char kVerbatim = '\x1f';
  std::vector<std::string> reversed;
  for (auto it = args.rbegin(); it != args.rend(); ++it)
    reversed.push_back(!it->empty() && it->front() == '[' ? kVerbatim + *it : *it);
  try {
    app.parse(reversed);
    for (auto& p : o.payload)
      if (!p.empty() && p.front() == kVerbatim) p.erase(0, 1);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  const bool structured = o.output == "structured";
  json record = {{"command", chosen}, {"field", o.field}};
  const auto fail = [&](int status, const std::string& name, const std::string& message) {
    if (structured) {
      record["error"] = {{"name", name}, {"message", message}};
      out << record.dump(2) << "\n";
    }
    err << (status == kExitUsage ? "usage error: " : "error: ") << message << "\n";
    return status;
  };
  try {
    const Field f = Field::parse(o.field);
    record["field"] = f.spec();
    Command fn = nullptr;
    for (const auto& [name, c] : commands())
      if (name == chosen) fn = c;
    Report r = fn(f, o);
    if (structured) {
      record["input"] = r.input;
      record["result"] = r.result;
      out << record.dump(2) << "\n";
    } else {
      out << r.text;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    return fail(kExitUsage, "UsageError", e.what());
  } catch (const Error& e) {
    return fail(e.code() == ErrorCode::ParseError ? kExitUsage : kExitDomain, std::string(e.name()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(kExitDomain, "ResourceExhausted", "out of memory");
  } catch (const std::exception& e) {
    return fail(kExitDomain, "InternalError", e.what());
  }
}

}  // namespace flex::cli
