#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ruin/errors.hpp"
#include "ruin/genfun.hpp"
#include "ruin/limit_laws.hpp"
#include "ruin/path_oracle.hpp"
#include "ruin/simulator.hpp"
#include "ruin/verify.hpp"

using namespace ruin;
using json = nlohmann::ordered_json;
using Complex = std::complex<double>;

namespace {

enum Exit { kPass = 0, kVerifyFailed = 1, kUsage = 2, kGuard = 3 };

// Thrown for invalid flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts a decimal or p/q.
double parse_real(const std::string& text) {
  if (text.find('/') != std::string::npos) return to_double(parse_rational(text));
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a real number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError("not a real number: '" + text + "'");
  return v;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

// "re" or "re,im".
Complex parse_complex(const std::string& text) {
  auto parts = parse_real_list(text);
  if (parts.size() > 2) throw UsageError("complex values take the form re or re,im");
  return {parts[0], parts.size() == 2 ? parts[1] : 0.0};
}

struct ModelFlags {
  std::string a = "1/3", b = "3/5", eta;
  int f = 0, N = 5;

  void attach(CLI::App* cmd, bool needF = true) {
    cmd->add_option("--a", a, "persistence below level f (rational p/q)")->capture_default_str();
    cmd->add_option("--b", b, "persistence at and above level f (rational p/q)")->capture_default_str();
    if (needF) {
      cmd->add_option("--f", f, "first level of the upper stratum");
      cmd->add_option("--eta", eta, "stratum boundary as a fraction of N (sets f = round(eta N))");
    }
    cmd->add_option("--N", N, "absorbing level")->capture_default_str();
  }

  ModelParams params() const {
    Rational ra = parse_rational(a), rb = parse_rational(b);
    if (!eta.empty()) {
      if (f != 0) throw UsageError("give either --f or --eta, not both");
      return ModelParams::from_eta(ra, rb, parse_real(eta), N);
    }
    if (f == 0) throw UsageError("give --f or --eta");
    return ModelParams::make(ra, rb, f, N);
  }
};

json params_json(const ModelParams& p) {
  json j{{"a", to_string(p.a)}, {"b", to_string(p.b)}, {"f", p.f}, {"N", p.N}};
  if (p.eta) j["eta"] = *p.eta;
  return j;
}

struct Output {
  std::string path;
  std::string format = "csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("--out", path, "output file (default: standard output)");
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  }
  bool json_mode() const { return format == "json"; }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot open output file '" + path + "'");
    os << text;
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Series coefficients as a table keyed by (runs, shortRuns, steps).
using Cells = std::map<std::tuple<int, int, int>, Rational>;

Cells cells_of(const Series3& s) {
  Cells c;
  for (const auto& [m, v] : s.terms()) c[{m.i, m.j, m.k}] = v;
  return c;
}

// Emits a coefficient table with an optional comparison column set.
int emit_table(const Output& out, const std::string& command, const json& meta, const Cells& values,
               const std::optional<Cells>& compareTo, const std::string& valueName) {
  bool allZero = true;
  std::set<std::tuple<int, int, int>> keys;
  for (const auto& [k, v] : values) keys.insert(k);
  if (compareTo)
    for (const auto& [k, v] : *compareTo) keys.insert(k);

  json rows = json::array();
  std::ostringstream csv;
  csv << "runs,shortRuns,steps," << valueName << "_num," << valueName << "_den";
  if (compareTo) csv << ",oracle_num,oracle_den,delta_num,delta_den";
  csv << '\n';
  for (const auto& key : keys) {
    auto [R, V, L] = key;
    Rational v = values.count(key) ? values.at(key) : Rational(0);
    json row{{"runs", R}, {"shortRuns", V}, {"steps", L}, {valueName, to_string(v)}};
    csv << R << ',' << V << ',' << L << ',' << numerator(v) << ',' << denominator(v);
    if (compareTo) {
      Rational o = compareTo->count(key) ? compareTo->at(key) : Rational(0);
      Rational d = v - o;
      allZero = allZero && d == 0;
      row["oracle"] = to_string(o);
      row["delta"] = to_string(d);
      csv << ',' << numerator(o) << ',' << denominator(o) << ',' << numerator(d) << ',' << denominator(d);
    }
    csv << '\n';
    rows.push_back(row);
  }
  if (out.json_mode()) {
    json j{{"command", command}};
    j.update(meta);
    j["rows"] = rows;
    if (compareTo) j["verified"] = allZero;
    out.write(dump(j));
  } else {
    out.write(csv.str());
  }
  if (compareTo && !allZero) {
    std::cerr << "verification failed: nonzero deltas\n";
    return kVerifyFailed;
  }
  return kPass;
}

void check_lmax(int lmax) {
  if (lmax < 0 || lmax > kMaxEnumerationLength) throw UsageError("--lmax must lie in [0, 30]");
}

int run_exact_dist(const ModelFlags& mf, int lmax, bool verify, const Output& out) {
  check_lmax(lmax);
  ModelParams p = mf.params();
  GfTable<SeriesAlgebra> t(SeriesAlgebra{lmax}, p);
  Series3 k = t.excursion_gf(p.N);
  std::optional<Cells> oracle;
  if (verify) {
    Rational mass = prob_height_at_most(p.N, p);
    Cells enumerated;
    for (const auto& [sig, w] : enum_excursions(p, lmax, p.N).mass)
      enumerated[{sig.runs, sig.shortRuns, sig.steps}] += w;
    // Compare unconditional masses; the reported probability stays conditional on H <= N.
    for (auto& [key, v] : enumerated) v /= mass;
    oracle = std::move(enumerated);
  }
  json meta{{"params", params_json(p)}, {"lmax", lmax}, {"height_bound", p.N}};
  return emit_table(out, "exact-dist", meta, cells_of(k), oracle, "probability");
}

int run_first_passage(const ModelFlags& mf, int m, int n, int lmax, bool verify, const Output& out) {
  check_lmax(lmax);
  ModelParams p = mf.params();
  GfTable<SeriesAlgebra> t(SeriesAlgebra{lmax}, p);
  Series3 g = t.g(m, n);
  std::optional<Cells> oracle;
  if (verify) {
    auto e = enum_first_passage(m, n, p, lmax);
    oracle = cells_of(e.numerator * (1 / e.mass));
  }
  json meta{{"params", params_json(p)}, {"lmax", lmax}, {"from", m}, {"to", n}};
  return emit_table(out, "first-passage", meta, cells_of(g), oracle, "probability");
}

int run_kn(const ModelFlags& mf, int n, int lmax, const std::string& point, const Output& out) {
  check_lmax(lmax);
  ModelParams p = mf.params();
  if (n == 0) n = p.N;
  GfTable<SeriesAlgebra> t(SeriesAlgebra{lmax}, p);
  json meta{{"params", params_json(p)}, {"lmax", lmax}, {"height_bound", n}};
  if (!point.empty()) {
    auto xs = parse_real_list(point);
    if (xs.size() != 3) throw UsageError("--point takes r,y,z");
    GfTable<ComplexAlgebra> c(ComplexAlgebra{xs[0], xs[1], xs[2]}, p);
    Complex v = c.excursion_gf(n);
    meta["point"] = xs;
    meta["value"] = {{"re", v.real()}, {"im", v.imag()}};
    if (!out.json_mode()) std::cerr << std::setprecision(17) << "K(" << point << ") = " << v << '\n';
  }
  return emit_table(out, "kn", meta, cells_of(t.excursion_gf(n)), std::nullopt, "probability");
}

int run_k_infinity(const std::string& aText, const std::string& r, const std::string& y, const std::string& z,
                   const Output& out) {
  Rational a = parse_rational(aText);
  Complex v = excursion_gf_limit(a, a, parse_complex(r), parse_complex(y), parse_complex(z));
  if (out.json_mode()) {
    json j{{"command", "k-infinity"}, {"a", to_string(a)}, {"re", v.real()}, {"im", v.imag()}};
    out.write(dump(j));
  } else {
    std::ostringstream os;
    os << std::setprecision(17) << "re,im\n" << v.real() << ',' << v.imag() << '\n';
    out.write(os.str());
  }
  return kPass;
}

struct SimFlags {
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;
  std::string stat = "X";
  std::string tList = "1";
  std::string sList;
  std::string zeta = "1";
  std::string rowsPath;
  int threads = 0;
};

StatSpec stat_spec(const SimFlags& sf) {
  static const std::map<std::string, StatKind> kinds{{"X", StatKind::X},       {"Xcal", StatKind::Xcal},
                                                     {"Y1Y2", StatKind::Y1Y2}, {"Xzeta", StatKind::Xzeta},
                                                     {"Z1Z2", StatKind::Z1Z2}};
  auto it = kinds.find(sf.stat);
  if (it == kinds.end()) throw UsageError("unknown --stat '" + sf.stat + "'");
  return {it->second, parse_real(sf.zeta)};
}

// Limit cf of the chosen statistic at argument (s, t); s is ignored for scalar statistics.
Complex limit_value(const ModelParams& p, StatSpec spec, double s, double t) {
  const double a = to_double(p.a), b = to_double(p.b);
  const double eta = p.eta ? *p.eta : static_cast<double>(p.f) / p.N;
  switch (spec.kind) {
    case StatKind::X: return phi_hat(t, LimitParams::make(a, b, eta));
    case StatKind::Xcal: return xcal_cf(t, LimitParams::make(a, b, eta));
    case StatKind::Y1Y2: return joint_cf_homog(s, t, a);
    case StatKind::Z1Z2: return z_joint_cf(s, t, a);
    case StatKind::Xzeta: return joint_cf_homog((1 - a - spec.zeta) * t / (1 - a), t, a);
  }
  return 0.0;
}

int run_simulate(const ModelFlags& mf, const SimFlags& sf, const Output& out) {
  ModelParams p = mf.params();
  if (sf.samples < 1) throw UsageError("--samples must be at least 1");
  StatSpec spec = stat_spec(sf);
  const bool pair = spec.kind == StatKind::Y1Y2 || spec.kind == StatKind::Z1Z2;
  auto ts = parse_real_list(sf.tList);
  std::vector<double> ss(ts.size(), 0.0);
  if (pair) {
    if (sf.sList.empty()) throw UsageError("--stat " + sf.stat + " needs --s with one entry per --t");
    ss = parse_real_list(sf.sList);
    if (ss.size() != ts.size()) throw UsageError("--s and --t must have the same length");
  } else if (!sf.sList.empty()) {
    throw UsageError("--s applies to Y1Y2 and Z1Z2 only");
  }

  auto rows = simulate_batch(p, sf.seed, sf.samples, sf.threads);
  std::vector<ScaledSample> xs;
  xs.reserve(rows.size());
  for (const auto& r : rows) xs.push_back(scaled_statistic(r, p, spec));

  if (!sf.rowsPath.empty()) {
    std::ofstream os(sf.rowsPath, std::ios::binary);
    if (!os) throw UsageError("cannot open rows file '" + sf.rowsPath + "'");
    write_trajectory_csv(os, rows);
  }

  json table = json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "t_re,t_im_component,cf_re,cf_im,stderr,limit_re,limit_im\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CfEstimate e;
    std::optional<double> se;
    if (xs.size() == 1) {
      const auto& x = xs.front();
      double phase = pair ? ss[i] * x.value[0] + ts[i] * x.value[1] : ts[i] * x.value[0];
      e.value = std::polar(1.0, phase);
    } else {
      e = pair ? empirical_cf(xs, ss[i], ts[i]) : empirical_cf(xs, ts[i]);
      se = std::hypot(e.stderrRe, e.stderrIm);
    }
    Complex lim = limit_value(p, spec, ss[i], ts[i]);
    const double first = pair ? ss[i] : ts[i], second = pair ? ts[i] : 0.0;
    csv << first << ',' << second << ',' << e.value.real() << ',' << e.value.imag() << ',';
    if (se) csv << *se;
    csv << ',' << lim.real() << ',' << lim.imag() << '\n';
    json row{{"t_re", first}, {"t_im_component", second}, {"cf_re", e.value.real()}, {"cf_im", e.value.imag()}};
    row["stderr"] = se ? json(*se) : json(nullptr);
    row["limit_re"] = lim.real();
    row["limit_im"] = lim.imag();
    table.push_back(row);
  }
  if (out.json_mode()) {
    json j{{"command", "simulate"}, {"params", params_json(p)}, {"samples", sf.samples},
           {"seed", sf.seed},       {"stat", sf.stat},           {"cf", table}};
    if (spec.kind == StatKind::Xzeta) j["zeta"] = spec.zeta;
    out.write(dump(j));
  } else {
    out.write(csv.str());
  }
  return kPass;
}

struct DensityFlags {
  std::string kind = "special";
  std::string a = "1/4", b = "3/4", eta = "1/4";
  double xmin = -10, xmax = 10;
  int points = 2001;
  double T = 0, dt = 1e-3;
};

int run_density(const DensityFlags& df, const Output& out) {
  CfFunction cf;
  double rate = 1;
  const double a = parse_real(df.a);
  if (df.kind == "special") {
    cf = [a](double t) { return special_phi_hat(t, a); };
    rate = special_sigma(a);
  } else if (df.kind == "phi") {
    auto lp = LimitParams::make(a, parse_real(df.b), parse_real(df.eta));
    cf = [lp](double t) { return phi_hat(t, lp); };
    rate = lp.kappa1 + lp.kappa2;
  } else if (df.kind == "sinh") {
    cf = [](double t) { return t == 0 ? Complex(1) : Complex(t / std::sinh(t)); };
  } else {
    throw UsageError("unknown --kind '" + df.kind + "'");
  }
  if (df.points < 3 || !(df.xmax > df.xmin)) throw UsageError("need --points >= 3 and --xmax > --xmin");
  double T = df.T > 0 ? df.T : auto_truncation(cf, rate);
  auto g = invert_cf(cf, XGrid{df.xmin, df.xmax, df.points}, T, df.dt);
  if (out.json_mode()) {
    json j{{"command", "density"}, {"kind", df.kind},           {"T", T},
           {"dt", df.dt},          {"mean", g.mean},            {"grid_mean", g.gridMean},
           {"argmax", g.argmax},   {"integral", g.integral},    {"max_imag_residue", g.maxImagResidue}};
    json pts = json::array();
    for (std::size_t i = 0; i < g.xs.size(); ++i) pts.push_back({{"x", g.xs[i]}, {"density", g.values[i]}});
    j["grid"] = pts;
    out.write(dump(j));
  } else {
    std::ostringstream os;
    write_density_csv(os, g);
    out.write(os.str());
    std::cerr << std::setprecision(10) << "mean " << g.mean << " argmax " << g.argmax << " integral " << g.integral
              << '\n';
  }
  return kPass;
}

struct VerifyFlags {
  std::string suite = "identities";
  int nmax = 5;
  int lmax = 16;
  int degree = 12;
};

int run_verify(const ModelFlags& mf, const VerifyFlags& vf, const Output& out) {
  VerifyReport rep;
  if (vf.suite == "identities") {
    rep = verify_identities(mf.params(), vf.degree);
  } else if (vf.suite == "symmetry") {
    rep = verify_symmetry(parse_rational(mf.a), vf.nmax);
  } else if (vf.suite == "rho") {
    rep = verify_rho(mf.params());
  } else if (vf.suite == "oracle") {
    check_lmax(vf.lmax);
    rep = verify_oracle(mf.params(), vf.lmax);
  } else if (vf.suite == "limits") {
    rep = verify_limits(parse_real(mf.a));
  } else {
    throw UsageError("unknown --suite '" + vf.suite + "'");
  }
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json jc{{"name", c.name}, {"pass", c.pass()}, {"cases", c.cases}, {"failures", c.failures}};
    if (!c.witness.empty()) jc["witness"] = c.witness;
    checks.push_back(jc);
  }
  json j{{"command", "verify"}, {"suite", rep.suite}, {"params", rep.params}, {"pass", rep.pass()}, {"checks", checks}};
  out.write(dump(j));
  return rep.pass() ? kPass : kVerifyFailed;
}

int guard_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParams:
    case ErrorKind::ParseError:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::TooClose:
    case ErrorKind::EqualIndices:
    case ErrorKind::HomogeneousOnly:
    case ErrorKind::StrataTooLow:
    case ErrorKind::TooFewSamples:
      return kUsage;
    default:
      return kGuard;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-strata persistent gambler's ruin: exact laws, enumeration, simulation and limits"};
  app.require_subcommand(1);

  ModelFlags mf;
  Output out;
  int lmax = 16, m = 0, n = 0;
  bool verify = false;
  std::string point, r = "1", y = "1", z = "1";

  auto* exact = app.add_subcommand("exact-dist", "exact excursion law from the K_N expansion");
  mf.attach(exact);
  out.attach(exact);
  exact->add_option("--lmax", lmax, "largest excursion length")->capture_default_str();
  exact->add_flag("--verify", verify, "compare with path enumeration; exit 1 on any nonzero delta");

  auto* fp = app.add_subcommand("first-passage", "one-sided first-passage generating function g_{m,n}");
  mf.attach(fp);
  out.attach(fp);
  fp->add_option("--m", m, "start level")->required();
  fp->add_option("--n", n, "target level")->required();
  fp->add_option("--lmax", lmax, "largest path length")->capture_default_str();
  fp->add_flag("--verify", verify, "compare with path enumeration");

  auto* kn = app.add_subcommand("kn", "conditional excursion generating function K_n");
  mf.attach(kn);
  out.attach(kn);
  kn->add_option("--n", n, "height bound (default N)");
  kn->add_option("--lmax", lmax, "largest excursion length")->capture_default_str();
  kn->add_option("--point", point, "also evaluate at r,y,z");

  std::string kinfA = "1/2";
  auto* kinf = app.add_subcommand("k-infinity", "homogeneous excursion generating function without height bound");
  out.attach(kinf);
  kinf->add_option("--a", kinfA, "persistence (rational p/q)")->capture_default_str();
  kinf->add_option("--r", r, "r as re or re,im")->capture_default_str();
  kinf->add_option("--y", y, "y as re or re,im")->capture_default_str();
  kinf->add_option("--z", z, "z as re or re,im")->capture_default_str();

  SimFlags sf;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo trajectories and empirical characteristic functions");
  mf.attach(sim);
  out.attach(sim);
  sim->add_option("--samples", sf.samples, "number of trajectories")->capture_default_str();
  sim->add_option("--seed", sf.seed, "random seed")->capture_default_str();
  sim->add_option("--stat", sf.stat, "X, Xcal, Y1Y2, Xzeta or Z1Z2")->capture_default_str();
  sim->add_option("--t", sf.tList, "comma-separated cf arguments")->capture_default_str();
  sim->add_option("--s", sf.sList, "first cf arguments for Y1Y2 and Z1Z2");
  sim->add_option("--zeta", sf.zeta, "zeta for Xzeta")->capture_default_str();
  sim->add_option("--rows", sf.rowsPath, "write one CSV row per trajectory to this file");
  sim->add_option("--threads", sf.threads, "worker threads (default RUIN_THREADS or all cores)");

  DensityFlags df;
  auto* dens = app.add_subcommand("density", "numerical inverse of a limit characteristic function");
  out.attach(dens);
  dens->add_option("--kind", df.kind, "special, phi or sinh")->capture_default_str();
  dens->add_option("--a", df.a, "a (decimal or p/q)")->capture_default_str();
  dens->add_option("--b", df.b, "b for --kind phi")->capture_default_str();
  dens->add_option("--eta", df.eta, "eta for --kind phi")->capture_default_str();
  dens->add_option("--xmin", df.xmin, "left end of the x grid")->capture_default_str();
  dens->add_option("--xmax", df.xmax, "right end of the x grid")->capture_default_str();
  dens->add_option("--points", df.points, "number of grid points")->capture_default_str();
  dens->add_option("--T", df.T, "truncation (0 selects it from the decay rate)")->capture_default_str();
  dens->add_option("--dt", df.dt, "trapezoid step in t")->capture_default_str();

  VerifyFlags vf;
  auto* ver = app.add_subcommand("verify", "run an exact or numerical check suite; JSON report");
  mf.attach(ver);
  ver->add_option("--out", out.path, "output file (default: standard output)");
  ver->add_option("--suite", vf.suite, "identities, symmetry, rho, oracle or limits")->capture_default_str();
  ver->add_option("--nmax", vf.nmax, "largest half-length for the symmetry suite")->capture_default_str();
  ver->add_option("--lmax", vf.lmax, "largest path length for the oracle suite")->capture_default_str();
  ver->add_option("--degree", vf.degree, "z truncation order for series identities")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*exact) return run_exact_dist(mf, lmax, verify, out);
    if (*fp) return run_first_passage(mf, m, n, lmax, verify, out);
    if (*kn) return run_kn(mf, n, lmax, point, out);
    if (*kinf) return run_k_infinity(kinfA, r, y, z, out);
    if (*sim) return run_simulate(mf, sf, out);
    if (*dens) return run_density(df, out);
    if (*ver) return run_verify(mf, vf, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const RuinError& e) {
    std::cerr << e.what() << '\n';
    return guard_code(e.kind());
  }
  return kUsage;
}
