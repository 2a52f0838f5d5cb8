#include "barnesbeta/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "barnesbeta/checks.hpp"
#include "barnesbeta/errors.hpp"
#include "barnesbeta/identities.hpp"
#include "barnesbeta/mellin.hpp"
#include "barnesbeta/multigamma.hpp"
#include "barnesbeta/sampling.hpp"
#include "barnesbeta/selberg.hpp"
#include "barnesbeta/xi.hpp"

namespace barnesbeta {

namespace {

using json = nlohmann::json;
using cd = std::complex<double>;

constexpr std::uint64_t kDefaultSeed = 0xB41215;

std::vector<double> parse_vec(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(std::stod(item));
  return v;
}

// complex literal: "1.5", "1.5+0.5i", "2-1i"
cd parse_complex(const std::string& s) {
  if (s.empty()) throw CLI::ValidationError("empty complex literal");
  if (s.back() != 'i') return cd(std::stod(s));
  std::string body = s.substr(0, s.size() - 1);
  size_t split = body.npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == body.npos) return cd(0.0, std::stod(body));
  return cd(std::stod(body.substr(0, split)), std::stod(body.substr(split)));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(out_path);
    f << text;
  }
}

json record_json(const CheckRecord& r) {
  return json{{"name", r.name},          {"paper_ref", r.paper_ref}, {"lhs", r.lhs},
              {"rhs", r.rhs},            {"residual", r.residual},   {"threshold", r.threshold},
              {"pass", r.pass}};
}

std::string records_csv(const std::vector<CheckRecord>& recs) {
  std::ostringstream os;
  os << "name,paper_ref,lhs,rhs,residual,threshold,pass\n";
  os.precision(17);
  for (const auto& r : recs)
    os << r.name << ",\"" << r.paper_ref << "\"," << r.lhs << ',' << r.rhs << ',' << r.residual
       << ',' << r.threshold << ',' << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

std::string records_text(const std::vector<CheckRecord>& recs) {
  std::ostringstream os;
  os.precision(10);
  for (const auto& r : recs)
    os << (r.pass ? "PASS " : "FAIL ") << r.name << "  residual=" << r.residual
       << " threshold=" << r.threshold << '\n';
  return os.str();
}

struct CommonOpts {
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out;
  bool deterministic = false;
};

json with_meta(json j, const CommonOpts& opt) {
  j["seed"] = opt.seed;
  if (!opt.deterministic) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    j["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  }
  return j;
}

int run_impl(const std::vector<std::string>& args) {
  CLI::App app{"Barnes multiple gamma functions, Barnes beta distributions, the Selberg "
               "integral law, and the xi-function constructions"};
  app.require_subcommand(1);

  CommonOpts opt;
  app.add_option("--seed", opt.seed, "base RNG seed");
  app.add_option("--format", opt.format, "output format: json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", opt.out, "write the report to a file");
  app.add_flag("--deterministic", opt.deterministic, "omit timestamps from reports");

  // ---- gamma ----
  auto* g = app.add_subcommand("gamma", "evaluate L_M, Gamma_M, Barnes G, or the zeta sum");
  std::string g_a = "1", g_w = "1", g_z, g_s;
  int g_nmax = 400;
  g->add_option("--a", g_a, "periods, comma separated (empty string for M = 0)");
  g->add_option("--w", g_w, "argument w (complex literal re+imi)");
  g->add_option("--G", g_z, "evaluate Barnes G at this argument instead");
  g->add_option("--zeta-s", g_s, "evaluate the multiple zeta sum at this s");
  g->add_option("--nmax", g_nmax, "box truncation for the zeta sum");

  // ---- eta ----
  auto* e = app.add_subcommand("eta", "Mellin transform of a Barnes beta law");
  int e_M = 0, e_N = 0;
  std::string e_a, e_b, e_q = "1";
  double e_b0 = 1.0;
  e->add_option("--M", e_M)->required();
  e->add_option("--N", e_N)->required();
  e->add_option("--a", e_a, "a periods, comma separated");
  e->add_option("--b0", e_b0)->required();
  e->add_option("--b", e_b, "b periods, comma separated")->required();
  e->add_option("--q", e_q, "evaluation point (complex literal)");

  // ---- moments ----
  auto* mo = app.add_subcommand("moments", "integral moments E[beta^{+-k a_i}]");
  int mo_M = 1, mo_N = 1, mo_k = 1, mo_sign = 1, mo_i = 0;
  std::string mo_a, mo_b;
  double mo_b0 = 1.0;
  mo->add_option("--M", mo_M)->required();
  mo->add_option("--N", mo_N)->required();
  mo->add_option("--a", mo_a)->required();
  mo->add_option("--b0", mo_b0)->required();
  mo->add_option("--b", mo_b)->required();
  mo->add_option("--k", mo_k);
  mo->add_option("--sign", mo_sign, "+1 or -1");
  mo->add_option("--i", mo_i, "period index");

  // ---- mass ----
  auto* ma = app.add_subcommand("mass", "P[beta = 1] by all three routes (M < N)");
  int ma_M = 0, ma_N = 1;
  std::string ma_a, ma_b;
  double ma_b0 = 1.0;
  ma->add_option("--M", ma_M)->required();
  ma->add_option("--N", ma_N)->required();
  ma->add_option("--a", ma_a);
  ma->add_option("--b0", ma_b0)->required();
  ma->add_option("--b", ma_b)->required();

  // ---- sample ----
  auto* sa = app.add_subcommand("sample", "draw from a law; CSV draws or JSON stats");
  std::string sa_law = "beta", sa_a, sa_b;
  double sa_b0 = 1.0, sa_par1 = 1.0, sa_par2 = 0.0, sa_par3 = 0.0, sa_q = 1.0;
  std::uint64_t sa_n = 10000;
  int sa_K = 200;
  sa->add_option("--law", sa_law,
                 "beta|lognormal|frechet|pareto23|beta00|gamma2|exp|selberg|critical|tdelta");
  sa->add_option("--a", sa_a);
  sa->add_option("--b0", sa_b0);
  sa->add_option("--b", sa_b);
  sa->add_option("--par1", sa_par1, "law parameter 1 (sigma^2 / tau / rate / delta)");
  sa->add_option("--par2", sa_par2, "law parameter 2 (lambda1)");
  sa->add_option("--par3", sa_par3, "law parameter 3 (lambda2)");
  sa->add_option("--q", sa_q, "power for the JSON moment stats");
  sa->add_option("--n", sa_n, "number of draws");
  sa->add_option("--K", sa_K, "product-sampler truncation");

  // ---- verify ----
  auto* ve = app.add_subcommand("verify", "run a residual-check suite");
  std::string ve_suite = "all";
  double ve_tol = 0.0;
  bool ve_quick = false;
  ve->add_option("--suite", ve_suite, "gamma|beta|selberg|critical|xi|all");
  ve->add_option("--tol", ve_tol, "override every threshold");
  ve->add_flag("--quick", ve_quick, "cut Monte-Carlo sizes for a smoke run");

  // ---- selberg ----
  auto* se = app.add_subcommand("selberg", "Selberg integral distribution");
  double se_tau = 1.5, se_l1 = 0.0, se_l2 = 0.0;
  std::string se_q;
  int se_moment = 0, se_sign = 1;
  se->add_option("--tau", se_tau)->required();
  se->add_option("--lambda1", se_l1);
  se->add_option("--lambda2", se_l2);
  se->add_option("--q", se_q, "evaluate the Mellin transform here");
  se->add_option("--moment", se_moment, "integral moment order l");
  se->add_option("--sign", se_sign, "+1 or -1 for the moment");

  // ---- critical ----
  auto* cr = app.add_subcommand("critical", "critical limit law");
  std::string cr_q;
  int cr_moment = 0;
  cr->add_option("--q", cr_q, "evaluate the Mellin transform here");
  cr->add_option("--moment", cr_moment, "negative moment order l");

  // ---- xi ----
  auto* x = app.add_subcommand("xi", "xi/theta evaluations and T(delta) residuals");
  std::string x_eval;
  double x_theta = 0.0, x_delta = 0.1, x_c2 = 0.0, x_s2q = 0.0;
  int x_trunc = 0, x_resq = 0;
  std::uint64_t x_n = 200000;
  bool x_extrapolate = false, x_c2_set = false, x_s2_set = false;
  x->add_option("--eval", x_eval, "evaluate xi at this point");
  x->add_option("--theta", x_theta, "evaluate theta at t");
  x->add_option("--trunc", x_trunc, "use the M-term triple product for theta");
  auto* oc2 = x->add_option("--c2", x_c2, "Mellin transform of C_2 at q");
  auto* os2 = x->add_option("--s2", x_s2q, "S_2(delta) transforms at q (needs --delta)");
  x->add_option("--delta", x_delta);
  x->add_option("--residual-q", x_resq, "functional-equation residual at integer q");
  x->add_option("--n", x_n, "Monte-Carlo size");
  x->add_flag("--extrapolate", x_extrapolate, "emit the delta -> 0 table at q = 1");

  // ---- report ----
  auto* re = app.add_subcommand("report", "analytic vs Monte-Carlo moment table");
  std::string re_law = "selberg";
  double re_tau = 1.5, re_l1 = 0.0, re_l2 = 0.0;
  std::uint64_t re_n = 200000;
  re->add_option("--law", re_law, "selberg|critical");
  re->add_option("--tau", re_tau);
  re->add_option("--lambda1", re_l1);
  re->add_option("--lambda2", re_l2);
  re->add_option("--n", re_n);

  // global options may follow the subcommand
  for (CLI::App* sc : {g, e, mo, ma, sa, ve, se, cr, x, re}) sc->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("barnesbeta");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError&) {
    std::cerr << app.help();
    return 64;
  }

  json out;

  if (g->parsed()) {
    GammaParams p(parse_vec(g_a));
    if (!g_z.empty()) {
      cd z = parse_complex(g_z);
      cd v = barnes_g(z);
      out = with_meta(json{{"G_re", v.real()}, {"G_im", v.imag()}}, opt);
    } else if (!g_s.empty()) {
      cd v = zeta_direct(p, parse_complex(g_s), parse_complex(g_w), g_nmax);
      out = with_meta(json{{"zeta_re", v.real()}, {"zeta_im", v.imag()}}, opt);
    } else {
      LogGammaValue v = log_gamma(p, parse_complex(g_w));
      cd gm = std::exp(v.value);
      out = with_meta(json{{"L_re", v.value.real()},
                           {"L_im", v.value.imag()},
                           {"Gamma_re", gm.real()},
                           {"Gamma_im", gm.imag()},
                           {"est_error", v.est_error}},
                      opt);
    }
  } else if (e->parsed()) {
    BarnesBetaParams p(parse_vec(e_a), e_b0, parse_vec(e_b));
    if (p.M != e_M || p.N != e_N)
      throw domain_error("eta: --M/--N disagree with the period lists");
    MellinValue v = eta(p, parse_complex(e_q));
    out = with_meta(json{{"q_re", v.q.real()},
                         {"q_im", v.q.imag()},
                         {"value_re", v.value.real()},
                         {"value_im", v.value.imag()},
                         {"est_error", v.est_error},
                         {"in_domain", v.in_domain}},
                    opt);
  } else if (mo->parsed()) {
    BarnesBetaParams p(parse_vec(mo_a), mo_b0, parse_vec(mo_b));
    if (p.M != mo_M || p.N != mo_N)
      throw domain_error("moments: --M/--N disagree with the period lists");
    double v = moment_int(p, mo_k, mo_sign, mo_i);
    out = with_meta(json{{"k", mo_k}, {"sign", mo_sign}, {"value", v}}, opt);
  } else if (ma->parsed()) {
    BarnesBetaParams p(parse_vec(ma_a), ma_b0, parse_vec(ma_b));
    if (p.M != ma_M || p.N != ma_N)
      throw domain_error("mass: --M/--N disagree with the period lists");
    double q = mass_at_one(p, MassMethod::quadrature);
    double sn = mass_at_one(p, MassMethod::sn_formula);
    double pr = mass_at_one(p, MassMethod::product);
    out = with_meta(
        json{{"quadrature", q}, {"sn_formula", sn}, {"product", pr},
             {"spread", std::max({std::abs(q - sn), std::abs(q - pr), std::abs(sn - pr)})}},
        opt);
  } else if (sa->parsed()) {
    RngStream rng(opt.seed, 1);
    std::function<double(RngStream&)> draw;
    if (sa_law == "beta") {
      BarnesBetaParams p(parse_vec(sa_a), sa_b0, parse_vec(sa_b));
      if (p.M < p.N) {
        auto sampler = std::make_shared<CompoundBetaSampler>(p);
        draw = [sampler](RngStream& r) { return sampler->draw(r); };
      } else {
        auto sampler = std::make_shared<ProductBetaSampler>(p, -1, sa_K, true);
        draw = [sampler](RngStream& r) { return sampler->draw(r); };
      }
    } else if (sa_law == "lognormal") {
      draw = [=](RngStream& r) { return sample_lognormal(r, sa_par1); };
    } else if (sa_law == "frechet") {
      draw = [=](RngStream& r) { return sample_frechet(r, sa_par1); };
    } else if (sa_law == "pareto23") {
      draw = [](RngStream& r) { return sample_pareto23(r); };
    } else if (sa_law == "beta00") {
      draw = [=](RngStream& r) { return sample_beta00(r, sa_par1); };
    } else if (sa_law == "gamma2") {
      draw = [](RngStream& r) { return sample_gamma2(r); };
    } else if (sa_law == "exp") {
      draw = [=](RngStream& r) { return sample_exponential(r, sa_par1); };
    } else if (sa_law == "selberg") {
      auto sampler = std::make_shared<SelbergSampler>(SelbergParams{sa_par1, sa_par2, sa_par3},
                                                      sa_K);
      draw = [sampler](RngStream& r) { return sampler->draw(r); };
    } else if (sa_law == "critical") {
      auto sampler = std::make_shared<CriticalSampler>(sa_K);
      draw = [sampler](RngStream& r) { return sampler->draw(r); };
    } else if (sa_law == "tdelta") {
      TDeltaParams tp;
      tp.delta = sa_par1;
      auto sampler = std::make_shared<TDeltaSampler>(tp);
      draw = [sampler](RngStream& r) { return sampler->draw(r); };
    } else {
      throw domain_error("sample: unknown law '" + sa_law + "'");
    }
    if (opt.format == "csv") {
      std::ostringstream os;
      os.precision(17);
      os << "draw\n";
      for (std::uint64_t i = 0; i < sa_n; ++i) os << draw(rng) << '\n';
      emit(os.str(), opt.out);
      return 0;
    }
    SampleStats st = mc_mellin(draw, sa_q, sa_n, rng);
    out = with_meta(json{{"law", sa_law},
                         {"q", sa_q},
                         {"n", st.n},
                         {"mean", st.mean},
                         {"variance", st.variance()},
                         {"stderr", st.stderr_mean()}},
                    opt);
  } else if (ve->parsed()) {
    ChecksConfig cc;
    cc.seed = opt.seed;
    cc.tol_override = ve_tol;
    cc.quick = ve_quick;
    auto recs = run_suite(ve_suite, cc);
    std::sort(recs.begin(), recs.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    bool all = true;
    for (const auto& r : recs) all = all && r.pass;
    if (opt.format == "csv") {
      emit(records_csv(recs), opt.out);
    } else if (opt.format == "text") {
      emit(records_text(recs), opt.out);
    } else {
      json jr = json::array();
      for (const auto& r : recs) jr.push_back(record_json(r));
      out = with_meta(json{{"suite", ve_suite}, {"pass", all}, {"records", jr}}, opt);
      emit(out.dump(2), opt.out);
    }
    return all ? 0 : 3;
  } else if (se->parsed()) {
    SelbergParams p{se_tau, se_l1, se_l2};
    if (!se_q.empty()) {
      cd v = selberg_mellin(p, parse_complex(se_q));
      out = with_meta(json{{"mellin_re", v.real()}, {"mellin_im", v.imag()}}, opt);
    } else if (se_moment > 0) {
      out = with_meta(json{{"l", se_moment},
                           {"sign", se_sign},
                           {"value", selberg_moment(p, se_moment, se_sign)}},
                      opt);
    } else {
      throw domain_error("selberg: pass --q or --moment");
    }
  } else if (cr->parsed()) {
    if (!cr_q.empty()) {
      cd v = critical_mellin(parse_complex(cr_q));
      out = with_meta(json{{"mellin_re", v.real()}, {"mellin_im", v.imag()}}, opt);
    } else if (cr_moment > 0) {
      out = with_meta(json{{"l", cr_moment}, {"value", critical_moment_neg(cr_moment)}}, opt);
    } else {
      throw domain_error("critical: pass --q or --moment");
    }
  } else if (x->parsed()) {
    x_c2_set = oc2->count() > 0;
    x_s2_set = os2->count() > 0;
    if (!x_eval.empty()) {
      out = with_meta(json{{"xi", riemann_xi(std::stod(x_eval))}}, opt);
    } else if (x_theta > 0.0) {
      json j{{"theta", theta(x_theta)}};
      if (x_trunc > 0) j["theta_trunc"] = theta_trunc(x_theta, x_trunc);
      out = with_meta(j, opt);
    } else if (x_c2_set) {
      out = with_meta(json{{"c2_mellin", c2_mellin(x_c2)}}, opt);
    } else if (x_s2_set) {
      json j{{"laplace_closed",
              s2_delta_transform(S2Transform::laplace_closed, x_s2q, x_delta)},
             {"laplace_levy", s2_delta_transform(S2Transform::laplace_levy, x_s2q, x_delta)}};
      if (x_delta < 0.5 * 3.14159265358979323846 * 3.14159265358979323846)
        j["mellin_series"] = s2_delta_transform(S2Transform::mellin_series, x_s2q, x_delta);
      out = with_meta(j, opt);
    } else if (x_resq > 0) {
      TDeltaParams tp;
      auto rep = t_delta_functional_residual(x_resq, x_delta, tp, x_n, opt.seed);
      out = with_meta(json{{"q", x_resq},
                           {"delta", x_delta},
                           {"lhs", rep.lhs},
                           {"rhs", rep.rhs},
                           {"stderr", rep.stderr_combined},
                           {"residual_in_stderr", rep.residual_in_stderr},
                           {"n", rep.n}},
                      opt);
    } else if (x_extrapolate) {
      json rows = json::array();
      std::ostringstream csv;
      csv.precision(17);
      csv << "delta,shifted_mean,stderr,analytic\n";
      TDeltaParams tp;
      for (double d : {0.2, 0.1, 0.05}) {
        tp.delta = d;
        TDeltaSampler sampler(tp);
        RngStream rng(opt.seed, 42);
        SampleStats st;
        for (std::uint64_t i = 0; i < x_n; ++i) st.add(sampler.draw(rng) - 1.0 / d);
        rows.push_back(json{{"delta", d},
                            {"shifted_mean", st.mean},
                            {"stderr", st.stderr_mean()},
                            {"analytic", s2_delta_mean(d)}});
        csv << d << ',' << st.mean << ',' << st.stderr_mean() << ',' << s2_delta_mean(d)
            << '\n';
      }
      if (opt.format == "csv") {
        emit(csv.str(), opt.out);
        return 0;
      }
      out = with_meta(json{{"limit", 2.0 / 3.0}, {"rows", rows}}, opt);
    } else {
      throw domain_error("xi: pass one of --eval/--theta/--c2/--s2/--residual-q/--extrapolate");
    }
  } else if (re->parsed()) {
    json rows = json::array();
    if (re_law == "selberg") {
      SelbergParams p{re_tau, re_l1, re_l2};
      SelbergSampler sampler(p);
      for (int l = 1; l <= 2; ++l) {
        double analytic = selberg_moment(p, l, -1);
        auto value = [&](RngStream& r) { return std::pow(sampler.draw(r), -l); };
        SampleStats st = mc_parallel(value, re_n, opt.seed, 9000 + 16ull * std::uint64_t(l));
        rows.push_back(json{{"moment", -l},
                            {"analytic", analytic},
                            {"mc_mean", st.mean},
                            {"mc_stderr", st.stderr_mean()}});
      }
    } else if (re_law == "critical") {
      CriticalSampler sampler;
      for (int l = 1; l <= 2; ++l) {
        double analytic = critical_moment_neg(l);
        auto value = [&](RngStream& r) { return std::pow(sampler.draw(r), -l); };
        SampleStats st = mc_parallel(value, re_n, opt.seed, 9500 + 16ull * std::uint64_t(l));
        rows.push_back(json{{"moment", -l},
                            {"analytic", analytic},
                            {"mc_mean", st.mean},
                            {"mc_stderr", st.stderr_mean()}});
      }
    } else {
      throw domain_error("report: unknown law '" + re_law + "'");
    }
    out = with_meta(json{{"law", re_law}, {"rows", rows}}, opt);
  }

  emit(out.dump(2), opt.out);
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
  try {
    return run_impl(args);
  } catch (const accuracy_error& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
}

}  // namespace barnesbeta
