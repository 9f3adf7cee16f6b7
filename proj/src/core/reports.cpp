#include "core/reports.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/algebra.hpp"
#include "core/calculus.hpp"
#include "core/extended.hpp"
#include "core/momentum.hpp"
#include "core/multivector.hpp"
#include "core/rigid_body.hpp"
#include "json.hpp"

namespace gastar {

using nlohmann::ordered_json;

uint64_t Rng::next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int Rng::range(int lo, int hi) {
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

Rational Rng::rational(int max_abs_num, int max_den) {
  return Rational(range(-max_abs_num, max_abs_num), range(1, max_den));
}

double Rng::real(double lo, double hi) {
  double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

namespace {

void require_known_fields(const ordered_json& j, const std::vector<std::string>& allowed,
                          const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw math_error(std::string("unknown field '") + it.key() + "' in " + what);
  }
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::vector<std::string> blade_names(int dim, const std::string& stem) {
  std::vector<std::string> out;
  for (int i = 0; i < dim; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

ordered_json algebra_json(const BivectorAlgebra& a) {
  ordered_json j;
  j["name"] = a.name;
  j["labels"] = a.labels;
  std::vector<std::string> gens;
  auto names = blade_names(a.sig->dim(), "e");
  for (const auto& g : a.generators) gens.push_back(g.str(names));
  j["generators"] = gens;
  auto& cs = j["structure_constants"] = ordered_json::array();
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t jj = 0; jj < a.size(); ++jj)
      for (size_t k = 0; k < a.size(); ++k)
        if (!a.c(i, jj, k).is_zero()) {
          ordered_json e;
          e["i"] = a.labels[i];
          e["j"] = a.labels[jj];
          e["k"] = a.labels[k];
          e["value"] = a.c(i, jj, k).str();
          cs.push_back(std::move(e));
        }
  auto& kappa = j["killing"] = ordered_json::array();
  for (size_t i = 0; i < a.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (size_t jj = 0; jj < a.size(); ++jj) row.push_back(a.killing[i][jj].str());
    kappa.push_back(std::move(row));
  }
  j["jacobi_identity"] = structure_jacobi_ok(a);
  j["antisymmetric"] = structure_antisymmetric_ok(a);
  return j;
}

std::string algebra_csv(const BivectorAlgebra& a) {
  std::ostringstream out;
  out << "kind,i,j,k,value\n";
  auto names = blade_names(a.sig->dim(), "e");
  for (size_t i = 0; i < a.size(); ++i)
    out << "generator," << a.labels[i] << ",,," << a.generators[i].str(names) << "\n";
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t jj = 0; jj < a.size(); ++jj)
      for (size_t k = 0; k < a.size(); ++k)
        if (!a.c(i, jj, k).is_zero())
          out << "C," << a.labels[i] << "," << a.labels[jj] << "," << a.labels[k] << ","
              << a.c(i, jj, k).str() << "\n";
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t jj = 0; jj < a.size(); ++jj)
      if (!a.killing[i][jj].is_zero())
        out << "kappa," << a.labels[i] << "," << a.labels[jj] << ",," << a.killing[i][jj].str()
            << "\n";
  return out.str();
}

std::string blade_label(uint32_t mask, const std::vector<std::string>& names) {
  if (mask == 0) return "1";
  std::string out;
  for (int b = 0; b < 32; ++b) {
    if (!(mask & (1u << b))) continue;
    if (!out.empty()) out += "*";
    out += names[static_cast<size_t>(b)];
  }
  return out;
}

ReportResult clifford_table(int dim, const std::string& metric, const std::string& format) {
  SignaturePtr sig;
  if (metric == "euclid")
    sig = euclidean_signature(dim);
  else if (metric == "minkowski")
    sig = minkowski_signature(dim);
  else
    throw math_error("unknown metric: " + metric);
  auto names = blade_names(dim, "e");
  uint32_t n = 1u << dim;
  ReportResult res;

  bool associative = true;
  Rng rng(1);
  for (int it = 0; it < 24; ++it) {
    PolyMv a = PolyMv::blade(sig, rng.next() % n, PolyScalar::constant(CRational(1)));
    PolyMv b = PolyMv::blade(sig, rng.next() % n, PolyScalar::constant(CRational(1)));
    PolyMv c = PolyMv::blade(sig, rng.next() % n, PolyScalar::constant(CRational(1)));
    if (star(star(a, b), c) != star(a, star(b, c))) associative = false;
  }
  if (!associative) {
    res.passed = false;
    res.failures.push_back("blade product failed the associativity spot check");
  }
  if (format == "csv") {
    std::ostringstream out;
    out << "a,b,product\n";
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) {
        PolyMv a = PolyMv::blade(sig, i, PolyScalar::constant(CRational(1)));
        PolyMv b = PolyMv::blade(sig, j, PolyScalar::constant(CRational(1)));
        out << blade_label(i, names) << "," << blade_label(j, names) << ","
            << star(a, b).str(names) << "\n";
      }
    res.payload = out.str();
  } else {
    ordered_json j;
    j["signature"] = sig->name();
    std::vector<std::string> blades;
    for (uint32_t i = 0; i < n; ++i) blades.push_back(blade_label(i, names));
    j["blades"] = blades;
    auto& table = j["table"] = ordered_json::array();
    for (uint32_t i = 0; i < n; ++i) {
      ordered_json row = ordered_json::array();
      for (uint32_t jj = 0; jj < n; ++jj) {
        PolyMv a = PolyMv::blade(sig, i, PolyScalar::constant(CRational(1)));
        PolyMv b = PolyMv::blade(sig, jj, PolyScalar::constant(CRational(1)));
        row.push_back(star(a, b).str(names));
      }
      table.push_back(std::move(row));
    }
    j["associative_spot_check"] = associative;
    res.payload = j.dump(2) + "\n";
  }
  return res;
}

PolyScalar hamiltonian_from_json(const ordered_json& j, const ExtendedPhaseSpace& eps) {
  PolyScalar h = eps.constant(CRational(0));
  int dof = eps.dof();
  for (const auto& term : j.at("terms")) {
    Rational re = Rational::parse(term.at("coeff").get<std::string>());
    std::vector<uint32_t> qe = term.at("q").get<std::vector<uint32_t>>();
    std::vector<uint32_t> pe = term.at("p").get<std::vector<uint32_t>>();
    if (static_cast<int>(qe.size()) != dof || static_cast<int>(pe.size()) != dof)
      throw math_error("exponent arrays must have one entry per degree of freedom");
    PolyScalar mono = eps.constant(CRational(re));
    for (int m = 0; m < dof; ++m) {
      for (uint32_t k = 0; k < qe[static_cast<size_t>(m)]; ++k) mono *= eps.z(m);
      for (uint32_t k = 0; k < pe[static_cast<size_t>(m)]; ++k) mono *= eps.z(dof + m);
    }
    h += mono;
  }
  return h;
}

std::vector<std::string> ghost_names(const ExtendedPhaseSpace& eps) {
  std::vector<std::string> names;
  for (int a = 1; a <= eps.n(); ++a) names.push_back("zeta" + std::to_string(a));
  for (int a = 1; a <= eps.n(); ++a) names.push_back("lambda" + std::to_string(a));
  return names;
}

// ---- property suites ----

PolyScalar random_constant_poly(Rng& rng) {
  return PolyScalar::constant(CRational(rng.rational(4, 4), rng.rational(4, 4)));
}

PolyMv random_multivector(Rng& rng, const SignaturePtr& sig) {
  PolyMv out(sig);
  uint32_t n = 1u << sig->dim();
  for (uint32_t mask = 0; mask < n; ++mask)
    if (rng.range(0, 2) != 0) out.accumulate(mask, random_constant_poly(rng));
  return out;
}

ordered_json kernel_suite(uint64_t seed, int samples) {
  ordered_json out;
  std::vector<SignaturePtr> sigs = {euclidean_signature(2), euclidean_signature(3),
                                    euclidean_signature(4), minkowski_signature(4),
                                    symplectic_signature(1), symplectic_signature(2)};
  bool passed = true;
  ordered_json per_sig = ordered_json::array();
  for (const auto& sig : sigs) {
    Rng rng(seed ^ std::hash<std::string>{}(sig->name()));
    int failures = 0;
    for (int it = 0; it < samples; ++it) {
      PolyMv a = random_multivector(rng, sig);
      PolyMv b = random_multivector(rng, sig);
      PolyMv c = random_multivector(rng, sig);
      if (star(star(a, b), c) != star(a, star(b, c))) ++failures;

      // grade structure of homogeneous products
      int r = rng.range(0, sig->dim());
      int s = rng.range(0, sig->dim());
      PolyMv ar = a.grade_part(r), bs = b.grade_part(s);
      PolyMv prod = star(ar, bs);
      for (int g : prod.grades()) {
        bool allowed = g >= std::abs(r - s) && g <= r + s && ((r + s - g) % 2 == 0);
        if (!allowed) ++failures;
      }

      // reversion: symmetric signatures literally, otherwise against the
      // transposed contraction
      if (sig->kind() == SignatureKind::symmetric) {
        if (star(a, b).reversed() != star(b.reversed(), a.reversed())) ++failures;
      } else {
        std::vector<std::vector<Rational>> mt(static_cast<size_t>(sig->dim()),
                                              std::vector<Rational>(static_cast<size_t>(sig->dim())));
        for (int i = 0; i < sig->dim(); ++i)
          for (int j = 0; j < sig->dim(); ++j)
            mt[static_cast<size_t>(i)][static_cast<size_t>(j)] = sig->contraction(j, i);
        auto sig_t = signature_from_matrix(sig->name() + "-T", sig->kind(), std::move(mt));
        PolyMv bt(sig_t), at(sig_t);
        for (const auto& [mask, cc] : b.blades()) bt.accumulate(mask, cc);
        for (const auto& [mask, cc] : a.blades()) at.accumulate(mask, cc);
        PolyMv rev_ab = star(a, b).reversed();
        PolyMv lhs(sig_t);
        for (const auto& [mask, cc] : rev_ab.blades()) lhs.accumulate(mask, cc);
        if (lhs != star(bt.reversed(), at.reversed())) ++failures;
      }
    }
    ordered_json sj;
    sj["signature"] = sig->name();
    sj["samples"] = samples;
    sj["failures"] = failures;
    per_sig.push_back(std::move(sj));
    if (failures) passed = false;
  }
  out["signatures"] = std::move(per_sig);
  out["passed"] = passed;
  return out;
}

ordered_json moyal_suite(uint64_t seed, int samples) {
  Rng rng(seed);
  PhaseSpace ps = PhaseSpace::darboux(2);
  auto random_poly = [&](int max_degree) {
    PolyScalar p = ps.constant(CRational(0));
    int terms = rng.range(1, 5);
    for (int t = 0; t < terms; ++t) {
      PolyScalar mono = ps.constant(CRational(rng.rational(3, 3)));
      int deg = rng.range(0, max_degree);
      for (int k = 0; k < deg; ++k) mono *= ps.var(rng.range(0, ps.dim() - 1));
      p += mono;
    }
    return p;
  };
  int failures = 0;
  for (int it = 0; it < samples; ++it) {
    PolyScalar f = random_poly(4), g = random_poly(4), h = random_poly(4);
    if (moyal_star(moyal_star(f, g, ps), h, ps) != moyal_star(f, moyal_star(g, h, ps), ps))
      ++failures;
    // hbar grading
    PolyScalar fg = moyal_star(f, g, ps);
    PolyScalar order0 = fg.substitute(ps.hbar_name(), Rational(0));
    if (order0 != f * g) ++failures;
    PolyScalar remainder = fg - order0;
    if (!remainder.is_zero()) {
      PolyScalar order1 = remainder.divide_by_monomial(CRational(1), ps.hbar_name(), 1)
                              .substitute(ps.hbar_name(), Rational(0));
      PolyScalar expect = poisson_bracket(f, g, ps).scaled(CRational(Rational(0), Rational(1, 2)));
      if (order1 != expect) ++failures;
    }
    // classical limit of the commutator is the Poisson bracket
    if (classical_limit(moyal_commutator(f, g, ps), ps) != poisson_bracket(f, g, ps)) ++failures;
  }
  ordered_json out;
  out["samples"] = samples;
  out["failures"] = failures;
  out["passed"] = failures == 0;
  return out;
}

ordered_json brst_suite(uint64_t seed, int samples) {
  Rng rng(seed);
  ordered_json out;
  int failures = 0;
  for (int it = 0; it < samples; ++it) {
    int dof = rng.range(1, 2);
    ExtendedPhaseSpace eps(dof);
    PolyScalar h = eps.constant(CRational(0));
    int terms = rng.range(1, 4);
    for (int t = 0; t < terms; ++t) {
      PolyScalar mono = eps.constant(CRational(rng.rational(3, 2)));
      int deg = rng.range(0, 4);
      for (int k = 0; k < deg; ++k) mono *= eps.z(rng.range(0, eps.n() - 1));
      h += mono;
    }
    BrstReport rep = brst_check(h, eps);
    if (!rep.all()) ++failures;
    PolyMv hp = passive_hamiltonian_from(h, eps);
    if (!passive_hamiltonian_check(h, hp, eps).ok) ++failures;
  }
  out["samples"] = samples;
  out["failures"] = failures;
  out["passed"] = failures == 0;
  return out;
}

ordered_json symplectic_suite(uint64_t seed, double tol_field, double tol_jlb) {
  ordered_json out;
  bool passed = true;
  ordered_json per_dof = ordered_json::array();
  for (int dof = 1; dof <= 3; ++dof) {
    Rng rng(seed + static_cast<uint64_t>(dof));
    PhaseSpace ps = PhaseSpace::darboux(dof);
    int dim = 2 * dof;
    Chart chart = make_flat_chart(dim);
    // the polynomial fields here are at most quadratic, so a wide central
    // difference is exact and stays off the roundoff floor
    chart.fd_step1 = 1e-3;
    auto container = blade_container(dim);

    auto random_poly3 = [&]() {
      PolyScalar p = ps.constant(CRational(0));
      int terms = rng.range(1, 4);
      for (int t = 0; t < terms; ++t) {
        PolyScalar mono = ps.constant(CRational(rng.rational(3, 2)));
        int deg = rng.range(1, 3);
        for (int k = 0; k < deg; ++k) mono *= ps.var(rng.range(0, dim - 1));
        p += mono;
      }
      return p;
    };

    // constant symplectic form Omega = sum e^{q_m} e^{p_m}
    RealMv omega(container);
    for (int m = 0; m < dof; ++m) omega.accumulate((1u << m) | (1u << (dof + m)), 1.0);
    MvField omega_field = [&](const Vec&) { return omega; };

    auto eval_at = [&](const PolyScalar& f, const Vec& z) {
      std::map<std::string, double> bind;
      for (int a = 0; a < dim; ++a) bind[ps.var_name(a)] = z[static_cast<size_t>(a)];
      bind[ps.hbar_name()] = 0.0;
      return f.eval_complex(bind).real();
    };
    auto field_of = [&](const PolyScalar& f) {
      // h_f = J grad f, symbolic gradient evaluated pointwise
      std::vector<PolyScalar> comp(static_cast<size_t>(dim));
      for (int a = 0; a < dim; ++a) {
        PolyScalar acc;
        for (int b = 0; b < dim; ++b) {
          const Rational& j = ps.coupling(a, b);
          if (j.is_zero()) continue;
          acc += f.diff(ps.var_name(b)).scaled(CRational(j));
        }
        comp[static_cast<size_t>(a)] = acc;
      }
      return comp;
    };
    auto vector_field = [&](const std::vector<PolyScalar>& comp) {
      return VectorField([&, comp](const Vec& z) {
        Vec v(static_cast<size_t>(dim));
        for (int a = 0; a < dim; ++a) v[static_cast<size_t>(a)] = eval_at(comp[static_cast<size_t>(a)], z);
        return v;
      });
    };

    double field_res = 0.0, jlb_res = 0.0, bracket_res = 0.0, theta_res = 0.0, closed_res = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      PolyScalar H = random_poly3(), F = random_poly3(), G = random_poly3();
      Vec z(static_cast<size_t>(dim));
      for (int a = 0; a < dim; ++a) z[static_cast<size_t>(a)] = rng.real(-1.0, 1.0);
      FrameData f0 = frames_at(chart, z);

      // closedness of Omega
      closed_res = std::max(closed_res, exterior_derivative(omega_field, chart, z).max_abs());

      // h_H . Omega = dH
      auto hH = field_of(H);
      Vec hval(static_cast<size_t>(dim));
      for (int a = 0; a < dim; ++a) hval[static_cast<size_t>(a)] = eval_at(hH[static_cast<size_t>(a)], z);
      RealMv lhs = interior_product(hval, omega, f0);
      RealMv dH(container);
      for (int a = 0; a < dim; ++a)
        dH.accumulate(1u << a, eval_at(H.diff(ps.var_name(a)), z));
      field_res = std::max(field_res, (lhs - dH).max_abs());

      // {F,G} = (h_G h_F) . Omega
      PolyScalar fg = poisson_bracket(F, G, ps);
      auto hF = field_of(F);
      auto hG = field_of(G);
      Vec fv(static_cast<size_t>(dim)), gv(static_cast<size_t>(dim));
      for (int a = 0; a < dim; ++a) {
        fv[static_cast<size_t>(a)] = eval_at(hF[static_cast<size_t>(a)], z);
        gv[static_cast<size_t>(a)] = eval_at(hG[static_cast<size_t>(a)], z);
      }
      double br = two_form_eval(omega, fv, gv);
      bracket_res = std::max(bracket_res, std::fabs(br - eval_at(fg, z)));

      // [h_F, h_G]_JLB = -h_{F,G}
      Vec jl = jacobi_lie(vector_field(hF), vector_field(hG), chart, z);
      auto hFG = field_of(fg);
      for (int a = 0; a < dim; ++a)
        jlb_res = std::max(jlb_res,
                           std::fabs(jl[static_cast<size_t>(a)] + eval_at(hFG[static_cast<size_t>(a)], z)));

      // theta = p_m dq^m with Omega = -d theta
      MvField theta_field = [&](const Vec& v) {
        RealMv m(container);
        for (int mm = 0; mm < dof; ++mm) m.accumulate(1u << mm, v[static_cast<size_t>(dof + mm)]);
        return m;
      };
      RealMv dtheta = exterior_derivative(theta_field, chart, z);
      theta_res = std::max(theta_res, (omega + dtheta).max_abs());
    }

    // exact operator identities for J on the rational kernel
    auto sym = symplectic_signature(dof);
    auto esig = euclidean_signature(dim);
    PolyMv jb(esig);
    for (int m = 0; m < dof; ++m)
      jb += wedge(PolyMv::basis_vector(esig, m), PolyMv::basis_vector(esig, dof + m));
    bool jj_ok = true, compat_ok = true;
    Rng rng2(seed + 100 + static_cast<uint64_t>(dof));
    for (int trial = 0; trial < 8; ++trial) {
      PolyMv zv(esig), wv(esig);
      PolyMv zs(sym), ws(sym);
      for (int a = 0; a < dim; ++a) {
        CRational cz(rng2.rational(4, 3)), cw(rng2.rational(4, 3));
        zv.accumulate(1u << a, PolyScalar::constant(cz));
        wv.accumulate(1u << a, PolyScalar::constant(cw));
        zs.accumulate(1u << a, PolyScalar::constant(cz));
        ws.accumulate(1u << a, PolyScalar::constant(cw));
      }
      PolyMv zj = inner(zv, jb);
      if (inner(zj, jb) != -zv) jj_ok = false;
      // a.b = a .sy (b.J) and a .sy b = (a.J).b
      PolyMv wj = inner(wv, jb);
      PolyMv wj_s(sym);
      for (const auto& [mask, c] : wj.blades()) wj_s.accumulate(mask, c);
      PolyMv zj_s(sym);
      for (const auto& [mask, c] : zj.blades()) zj_s.accumulate(mask, c);
      PolyScalar metric_dot = inner(zv, wv).scalar_part();
      PolyScalar sy_of = inner(zs, wj_s).scalar_part();
      if (metric_dot != sy_of) compat_ok = false;
      PolyScalar sy_dot = inner(zs, ws).scalar_part();
      PolyMv zj_e = zj;  // (z.J) in the metric algebra
      PolyScalar metric_of = inner(zj_e, wv).scalar_part();
      if (sy_dot != metric_of) compat_ok = false;
    }

    // Noether: oscillator flow preserves the angular momentum when dof >= 2
    double noether_drift = 0.0;
    {
      PolyScalar H = ps.constant(CRational(0));
      for (int a = 0; a < dim; ++a) H += (ps.var(a) * ps.var(a)).scaled(CRational(Rational(1, 2)));
      PolyScalar F = dof >= 2
                         ? ps.var("q1") * ps.var("p2") - ps.var("q2") * ps.var("p1")
                         : H;
      auto hH = field_of(H);
      Vec z(static_cast<size_t>(dim));
      for (int a = 0; a < dim; ++a) z[static_cast<size_t>(a)] = 0.3 + 0.2 * a;
      double f0v = eval_at(F, z);
      double dt = 1e-3;
      for (int step = 0; step < 2000; ++step) {
        // RK4 on dz = h_H(z)
        auto eval_field = [&](const Vec& p) {
          Vec v(static_cast<size_t>(dim));
          for (int a = 0; a < dim; ++a) v[static_cast<size_t>(a)] = eval_at(hH[static_cast<size_t>(a)], p);
          return v;
        };
        Vec k1 = eval_field(z), z2 = z;
        for (int a = 0; a < dim; ++a) z2[static_cast<size_t>(a)] = z[static_cast<size_t>(a)] + 0.5 * dt * k1[static_cast<size_t>(a)];
        Vec k2 = eval_field(z2);
        for (int a = 0; a < dim; ++a) z2[static_cast<size_t>(a)] = z[static_cast<size_t>(a)] + 0.5 * dt * k2[static_cast<size_t>(a)];
        Vec k3 = eval_field(z2);
        for (int a = 0; a < dim; ++a) z2[static_cast<size_t>(a)] = z[static_cast<size_t>(a)] + dt * k3[static_cast<size_t>(a)];
        Vec k4 = eval_field(z2);
        for (int a = 0; a < dim; ++a)
          z[static_cast<size_t>(a)] += dt / 6.0 * (k1[static_cast<size_t>(a)] + 2 * k2[static_cast<size_t>(a)] +
                                                   2 * k3[static_cast<size_t>(a)] + k4[static_cast<size_t>(a)]);
        noether_drift = std::max(noether_drift, std::fabs(eval_at(F, z) - f0v));
      }
    }

    ordered_json dj;
    dj["dof"] = dof;
    dj["closedness_residual"] = closed_res;
    dj["field_vs_form_residual"] = field_res;
    dj["bracket_residual"] = bracket_res;
    dj["jlb_residual"] = jlb_res;
    dj["theta_residual"] = theta_res;
    dj["jj_operator_identity"] = jj_ok;
    dj["compatibility_identities"] = compat_ok;
    dj["noether_drift"] = noether_drift;
    bool ok = closed_res < 1e-12 && field_res < tol_field && bracket_res < 1e-10 &&
              jlb_res < tol_jlb && theta_res < 1e-10 && jj_ok && compat_ok &&
              noether_drift < 1e-6;
    dj["passed"] = ok;
    passed = passed && ok;
    per_dof.push_back(std::move(dj));
  }

  AngularMomentumReport ang = angular_momentum_report();
  ordered_json aj;
  aj["algebra_exact"] = ang.algebra_ok;
  aj["field_match_exact"] = ang.field_match_ok;
  aj["display_match_exact"] = ang.display_match_ok;
  aj["equivariance_exact"] = ang.equivariance_ok;
  out["angular_momentum"] = std::move(aj);
  passed = passed && ang.all();

  CircleActionReport circ = circle_action_report(20, 20);
  ordered_json cj;
  cj["pde_residual"] = circ.pde_residual;
  cj["field_residual"] = circ.field_residual;
  cj["equator_check"] = circ.equator_check;
  cj["pole_value"] = circ.pole_value;
  out["circle_action"] = std::move(cj);
  passed = passed && circ.pde_residual < 1e-9;

  out["per_dof"] = std::move(per_dof);
  out["passed"] = passed;
  return out;
}

}  // namespace

ReportResult algebra_report(const std::string& name, const std::string& format) {
  ReportResult res;
  auto emit = [&](const BivectorAlgebra& a) {
    if (format == "csv")
      res.payload = algebra_csv(a);
    else
      res.payload = algebra_json(a).dump(2) + "\n";
    if (!structure_jacobi_ok(a)) {
      res.passed = false;
      res.failures.push_back("jacobi identity failed for " + a.name);
    }
  };
  if (name == "so3") {
    emit(so3_algebra());
  } else if (name == "lorentz:std") {
    emit(lorentz_algebra(false));
  } else if (name == "lorentz:nonstd" || name == "lorentz") {
    emit(lorentz_algebra(true));
  } else if (name.rfind("un:", 0) == 0) {
    emit(unitary_algebra(std::stoi(name.substr(3))));
  } else if (name.rfind("gln:", 0) == 0) {
    emit(gl_algebra(std::stoi(name.substr(4))));
  } else if (name.rfind("clifford:", 0) == 0) {
    std::string rest = name.substr(9);
    size_t colon = rest.find(':');
    if (colon == std::string::npos) throw math_error("use clifford:<dim>:<euclid|minkowski>");
    int dim = std::stoi(rest.substr(0, colon));
    return clifford_table(dim, rest.substr(colon + 1), format);
  } else {
    throw math_error("unknown algebra: " + name);
  }
  return res;
}

ReportResult brst_report(const std::string& hamiltonian_json) {
  ordered_json spec = ordered_json::parse(hamiltonian_json);
  require_known_fields(spec, {"dof", "terms"}, "hamiltonian spec");
  for (const auto& term : spec.at("terms"))
    require_known_fields(term, {"coeff", "q", "p"}, "hamiltonian term");
  int dof = spec.at("dof").get<int>();
  if (dof < 1 || dof > 3) throw math_error("dof must be between 1 and 3");
  ExtendedPhaseSpace eps(dof);
  PolyScalar h = hamiltonian_from_json(spec, eps);
  auto names = ghost_names(eps);

  BrstReport rep = brst_check(h, eps);
  PolyMv he = extended_hamiltonian(h, eps);
  ExtendedEom eom = extended_equations_of_motion(he, eps);

  ordered_json j;
  j["hamiltonian"] = h.str();
  j["extended_hamiltonian"] = he.str(names);
  ordered_json eomj;
  auto family = [&](const std::vector<PolyMv>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& m : v) arr.push_back(m.str(names));
    return arr;
  };
  eomj["z_dot"] = family(eom.z_dot);
  eomj["y_dot"] = family(eom.y_dot);
  eomj["zeta_dot"] = family(eom.zeta_dot);
  eomj["lambda_dot"] = family(eom.lambda_dot);
  j["equations_of_motion"] = std::move(eomj);

  ordered_json checks;
  checks["q_conserved"] = rep.q_conserved;
  checks["qbar_conserved"] = rep.qbar_conserved;
  checks["q_nilpotent"] = rep.q_nilpotent;
  checks["qbar_nilpotent"] = rep.qbar_nilpotent;
  checks["anticommute"] = rep.anticommute;
  checks["canonical_relations"] = rep.canonical_relations;
  checks["equations_match"] = rep.equations_match;
  j["checks"] = std::move(checks);
  j["charges"] = {{"q", rep.q.str(names)}, {"qbar", rep.qbar.str(names)}};
  j["passed"] = rep.all();

  ReportResult res;
  res.passed = rep.all();
  if (!rep.all()) res.failures.push_back("brst checks failed");
  res.payload = j.dump(2) + "\n";
  return res;
}

ReportResult geometry_report(const std::string& chart_json) {
  ordered_json spec = ordered_json::parse(chart_json);
  require_known_fields(spec, {"family", "radius", "ring", "tube", "dof", "dim", "grid"},
                       "chart spec");
  Chart chart = chart_from_json(chart_json);
  if (chart.d != 2) throw math_error("geometry tables support 2-dimensional charts");
  std::vector<int> grid = spec.value("grid", std::vector<int>{10, 10});
  if (grid.size() != 2 || grid[0] < 1 || grid[1] < 1) throw math_error("grid must be [n1, n2]");

  ReportResult res;
  std::ostringstream out;
  out.precision(17);
  out << "u1,u2,g11,g12,g22,K,"
      << "gamma111,gamma112,gamma122,gamma211,gamma212,gamma222,"
      << "res_christoffel,res_compat,res_ricci,res_bianchi,res_cartan1,res_cartan2,res_torsion\n";

  // interior sampling; margins keep finite-difference stencils inside
  double margin = chart.family == "sphere" ? 0.01 : 5e-3;
  auto lo = [&](int i) { return chart.domain[static_cast<size_t>(i)].first + margin; };
  auto hi = [&](int i) { return chart.domain[static_cast<size_t>(i)].second - margin; };
  double worst[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int i = 0; i < grid[0]; ++i) {
    double u1 = lo(0) + (hi(0) - lo(0)) * (i + 0.5) / grid[0];
    for (int jj = 0; jj < grid[1]; ++jj) {
      double u2 = lo(1) + (hi(1) - lo(1)) * (jj + 0.5) / grid[1];
      Vec u = {u1, u2};
      FrameData f = frames_at(chart, u);
      CurvatureData c = curvature_at(chart, u);
      NonCoordFrame nf = noncoordinate_frame_at(chart, u, coordinate_frame_field(2));
      out << u1 << "," << u2 << "," << f.g[0][0] << "," << f.g[0][1] << "," << f.g[1][1] << ","
          << c.gauss << "," << f.gamma[0][0][0] << "," << f.gamma[0][0][1] << ","
          << f.gamma[0][1][1] << "," << f.gamma[1][0][0] << "," << f.gamma[1][0][1] << ","
          << f.gamma[1][1][1] << "," << f.christoffel_residual << "," << f.compat_residual << ","
          << c.ricci_cyclic_residual << "," << c.bianchi_cyclic_residual << ","
          << nf.cartan_first_residual << "," << nf.cartan_second_residual << ","
          << nf.torsion_max << "\n";
      worst[0] = std::max(worst[0], f.christoffel_residual);
      worst[1] = std::max(worst[1], f.compat_residual);
      worst[2] = std::max(worst[2], c.ricci_cyclic_residual);
      worst[3] = std::max(worst[3], c.bianchi_cyclic_residual);
      worst[4] = std::max(worst[4], nf.cartan_first_residual);
      worst[5] = std::max(worst[5], nf.cartan_second_residual);
      worst[6] = std::max(worst[6], nf.torsion_max);
    }
  }
  res.payload = out.str();
  const char* names[7] = {"christoffel", "compat", "ricci", "bianchi", "cartan1", "cartan2",
                          "torsion"};
  double tols[7] = {1e-8, 1e-8, 1e-6, 1e-6, 1e-6, 1e-6, 1e-8};
  for (int k = 0; k < 7; ++k)
    if (worst[k] > tols[k]) {
      res.passed = false;
      res.failures.push_back(std::string(names[k]) + " residual " + format_double(worst[k]) +
                             " above " + format_double(tols[k]));
    }
  return res;
}

ReportResult rigid_body_report(const std::string& config_json) {
  ordered_json spec = ordered_json::parse(config_json);
  require_known_fields(spec, {"inertia", "l0", "dt", "steps"}, "rigid-body spec");
  std::vector<double> inertia = spec.at("inertia").get<std::vector<double>>();
  std::vector<double> l0 = spec.at("l0").get<std::vector<double>>();
  double dt = spec.value("dt", 1e-3);
  int steps = spec.value("steps", 10000);
  if (inertia.size() != 3 || l0.size() != 3) throw math_error("inertia and l0 need 3 components");

  InertiaOperator op = InertiaOperator::principal(inertia[0], inertia[1], inertia[2]);
  RigidState start{0.0, {l0[0], l0[1], l0[2]}, {1.0, 0.0, 0.0, 0.0}};
  Trajectory traj = integrate_free_body(start, op, dt, steps);
  PoincareResidual pres = poincare_residual(traj, op);

  ReportResult res;
  res.payload = trajectory_csv(traj);
  struct Check {
    const char* name;
    double value;
    double tol;
  } checks[] = {{"casimir_drift", traj.casimir_drift, 1e-10},
                {"energy_drift", traj.energy_drift, 1e-8},
                {"spatial_l_drift", traj.spatial_l_drift, 1e-6},
                {"poincare_residual", pres.max, 1e-6}};
  for (const auto& c : checks)
    if (c.value > c.tol) {
      res.passed = false;
      res.failures.push_back(std::string(c.name) + " " + format_double(c.value) + " above " +
                             format_double(c.tol));
    }
  return res;
}

ReportResult property_suite_report(const std::string& config_json) {
  ordered_json spec = config_json.empty() ? ordered_json::object() : ordered_json::parse(config_json);
  require_known_fields(spec,
                       {"suite", "seed", "kernel_samples", "moyal_samples", "brst_samples",
                        "tolerance"},
                       "property-suite spec");
  std::string suite = spec.value("suite", "all");
  uint64_t seed = spec.value("seed", 12345ull);
  int kernel_samples = spec.value("kernel_samples", 200);
  int moyal_samples = spec.value("moyal_samples", 40);
  int brst_samples = spec.value("brst_samples", 20);
  double tol = spec.value("tolerance", 1e-10);

  ordered_json j;
  j["seed"] = seed;
  bool passed = true;
  if (suite == "kernel" || suite == "all") {
    j["kernel"] = kernel_suite(seed, kernel_samples);
    passed = passed && j["kernel"]["passed"].get<bool>();
  }
  if (suite == "moyal" || suite == "all") {
    j["moyal"] = moyal_suite(seed, moyal_samples);
    passed = passed && j["moyal"]["passed"].get<bool>();
  }
  if (suite == "brst" || suite == "all") {
    j["brst"] = brst_suite(seed, brst_samples);
    passed = passed && j["brst"]["passed"].get<bool>();
  }
  if (suite == "symplectic" || suite == "all") {
    j["symplectic"] = symplectic_suite(seed, tol, tol);
    passed = passed && j["symplectic"]["passed"].get<bool>();
  }
  j["passed"] = passed;

  ReportResult res;
  res.passed = passed;
  if (!passed) res.failures.push_back("property suite failures; see payload");
  res.payload = j.dump(2) + "\n";
  return res;
}

}  // namespace gastar
