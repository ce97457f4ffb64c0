// Acceptance suite: one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "qevo/gellmann.hpp"
#include "qevo/hamiltonian.hpp"
#include "qevo/oracle.hpp"
#include "qevo/quaternion.hpp"
#include "qevo/qubit_classes.hpp"
#include "qevo/qubit_evolution.hpp"
#include "qevo/qudit_evolution.hpp"
#include "qevo/su_exponential.hpp"

using namespace qevo;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string sci(double x) { return fmt::format("{:.2e}", x); }

double qdist(const QuaternionState& a, const QuaternionState& b) {
  return (a.to_vector() - b.to_vector()).cwiseAbs().maxCoeff();
}

HamiltonianSpec::RotatingField rotating(double eta = 0.0) {
  return {1.0, kPi / 4.0, 2.0, eta, TimeFn::constant(0.0)};
}

HamiltonianSpec::PhiDriven phi_driven() { return {1.0, 0.5, 1.0, TimeFn::polynomial({0.0, 1.0, 0.1}), TimeFn::constant(0.0)}; }

HamiltonianSpec::FixedAxis fixed_axis() {
  return {Vec3(1.0, 2.0, 2.0).normalized(), TimeFn::sinusoid(0.5, 1.0, 0.0, 1.0), TimeFn::constant(0.3)};
}

RVector random_ball(std::mt19937_64& rng, int n, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  RVector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v.normalized() * radius * std::pow(uni(rng), 1.0 / n);
}

// ---------------------------------------------------------------- 1

Outcome algebra() {
  Outcome out;
  double worst_basic = 0.0;
  double worst_product = 0.0;
  double worst_commutator = 0.0;
  for (int d = 2; d <= 5; ++d) {
    const auto basis = build_basis(d);
    const auto sc = structure_constants(basis);
    const int n = basis.size();
    const CMatrix id = CMatrix::Identity(d, d);
    for (int k = 0; k < n; ++k) {
      worst_basic = std::max({worst_basic, max_abs(basis[k] - basis[k].adjoint()), std::abs(basis[k].trace())});
      for (int m = 0; m < n; ++m) {
        worst_basic = std::max(worst_basic, std::abs((basis[k] * basis[m]).trace() - (k == m ? 2.0 : 0.0)));
        CMatrix rhs = (k == m ? 2.0 / d : 0.0) * id;
        CMatrix comm = CMatrix::Zero(d, d);
        for (int j = 0; j < n; ++j) {
          rhs += cplx{sc.dsym(k, m, j), sc.f(k, m, j)} * basis[j];
          comm += 2.0 * kI * sc.f(k, m, j) * basis[j];
        }
        worst_product = std::max(worst_product, max_abs(basis[k] * basis[m] - rhs));
        worst_commutator = std::max(worst_commutator, max_abs(basis[k] * basis[m] - basis[m] * basis[k] - comm));
      }
    }
  }
  out.require(worst_basic <= 1e-12, "trace/hermiticity/orthogonality " + sci(worst_basic));
  out.require(worst_product <= 1e-12, "product rule " + sci(worst_product));
  out.require(worst_commutator <= 1e-12, "commutator rule " + sci(worst_commutator));

  const auto sc3 = structure_constants(build_basis(3));
  const double h = 0.5;
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<std::pair<std::array<int, 3>, double>> table = {
      {{1, 4, 6}, h},  {{1, 5, 7}, h},      {{2, 5, 6}, h},      {{3, 4, 4}, h},      {{3, 5, 5}, h},
      {{2, 4, 7}, -h}, {{3, 6, 6}, -h},     {{3, 7, 7}, -h},     {{1, 1, 8}, s},      {{2, 2, 8}, s},
      {{3, 3, 8}, s},  {{8, 8, 8}, -s},     {{4, 4, 8}, -s / 2}, {{5, 5, 8}, -s / 2}, {{6, 6, 8}, -s / 2},
      {{7, 7, 8}, -s / 2}};
  double worst_table = 0.0;
  for (const auto& [idx, value] : table) {
    worst_table = std::max(worst_table, std::abs(sc3.dsym(idx[0] - 1, idx[1] - 1, idx[2] - 1) - value));
  }
  out.require(worst_table <= 1e-14, "tabulated SU(3) dsym values " + sci(worst_table));
  return out;
}

// ---------------------------------------------------------------- 2

Outcome exponential_map() {
  Outcome out;
  std::mt19937_64 rng(20240601);
  const auto b2 = build_basis(2);
  const auto b3 = build_basis(3);

  double su2 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RVector r = random_ball(rng, 3, 10.0);
    su2 = std::max(su2, max_abs(exp_su2(r) - hermitian_exp(b2.contract(r), 1.0)));
  }
  out.require(su2 <= 1e-12, "exp_su2 vs spectral " + sci(su2));

  double su3 = 0.0;
  double grad = 0.0;
  double fwd = 0.0;
  int used = 0;
  while (used < 500) {
    const RVector r = random_ball(rng, 8, 5.0);
    if (r.norm() < 1e-3 || su3_degeneracy_margin(su3_angles(r).phi) <= kSu3DegeneracyThreshold) continue;
    ++used;
    su3 = std::max(su3, max_abs(exp_su3(r) - hermitian_exp(b3.contract(r), std::sqrt(1.5))));
    const CVector g = grad_k3(r);
    CVector fd(8);
    for (int j = 0; j < 8; ++j) {
      RVector rp = r;
      RVector rm = r;
      rp(j) += 1e-5;
      rm(j) -= 1e-5;
      fd(j) = (k3(rp) - k3(rm)) / 2e-5;
    }
    grad = std::max(grad, (g - fd).norm() / g.norm());
    fwd = std::max(fwd, forward_map_check(r, b3));
  }
  out.require(su3 <= 1e-9, "exp_su3 closed form vs spectral " + sci(su3));
  out.require(grad <= 1e-6, "grad_k3 vs finite differences (rel) " + sci(grad));
  out.require(fwd <= 1e-8, "d=3 forward map " + sci(fwd));
  return out;
}

// ---------------------------------------------------------------- 3

Outcome theorem3_rotating() {
  Outcome out;
  const auto f = rotating();
  const HamiltonianSpec h(f);
  const auto basis = build_basis(2);
  const double t0 = 0.0;
  const double t1 = 10.0;

  const auto traj = integrate_quaternion(h, t0, t1, 1e-4, {0.01, true});
  double rk = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    rk = std::max(rk, qdist(traj.states[i], theorem3_closed_form(h, t0, traj.times[i])));
  }
  out.require(rk <= 1e-8, "closed form vs RK4 " + sci(rk));

  const auto par = rotating_field_params(f);
  double oracle_eq71 = 0.0;
  double oracle_printed = 0.0;
  double richardson = 0.0;
  for (double t : {2.5, 5.0, 10.0}) {
    const long steps = static_cast<long>(std::lround(2e5 * (t - t0) / (t1 - t0)));
    const auto oracle = stepwise_propagator(h, basis, t0, t, steps);
    richardson = std::max(richardson, oracle.richardson_error_estimate);
    oracle_eq71 = std::max(oracle_eq71, max_abs(assemble_propagator(theorem3_closed_form(h, t0, t), 0.0) - oracle.U));
    const auto printed = theorem3_closed_form(par.J1, par.J2, f.omega * t + f.eta, f.omega * t0 + f.eta,
                                              par.Omega_tilde * (t - t0));
    oracle_printed = std::max(oracle_printed, max_abs(assemble_propagator(printed, 0.0) - oracle.U));
  }
  out.require(oracle_eq71 <= 1e-7, "closed form (gamma = b*Omega_b*(t-t0)) vs oracle " + sci(oracle_eq71));
  out.require(richardson <= 1e-8, "oracle Richardson estimate " + sci(richardson));
  const bool confirmed = oracle_eq71 <= 1e-7 && oracle_printed > 1e-3;
  out.require(confirmed, fmt::format("arbitration: oracle confirms gamma_b = b*Omega_b*(t-t0); "
                                     "Omega_tilde*(t-t0) = 2*b*Omega_b*(t-t0) misses by {}",
                                     sci(oracle_printed)));
  return out;
}

// ---------------------------------------------------------------- 4

Outcome phi_driven_family() {
  Outcome out;
  const auto f = phi_driven();
  const HamiltonianSpec h(f);
  const auto basis = build_basis(2);
  const auto par = phi_driven_params(f);
  const double t0 = 0.0;

  double worst = 0.0;
  for (double t : {2.5, 5.0}) {
    const auto q = theorem3_closed_form(par.J1, par.J2, f.phi(t), f.phi(t0), par.zeta / f.lambda * (f.phi(t) - f.phi(t0)));
    const auto oracle = stepwise_propagator(h, basis, t0, t, static_cast<long>(4e4 * t));
    worst = std::max(worst, max_abs(assemble_propagator(q, 0.0) - oracle.U));
  }
  out.require(worst <= 1e-7, "closed form vs oracle " + sci(worst));

  // φ(t) = ωt + η with λ = ω is the rotating field with b = √(q² + p²).
  const double omega = 2.0;
  const double eta = 0.3;
  const double theta = kPi / 4.0;
  const HamiltonianSpec::PhiDriven pd{std::sin(theta), std::cos(theta), omega, TimeFn::linear(eta, omega),
                                      TimeFn::constant(0.0)};
  const auto pp = phi_driven_params(pd);
  const HamiltonianSpec::RotatingField rf{1.0, theta, omega, eta, TimeFn::constant(0.0)};
  const auto rp = rotating_field_params(rf);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 10.0);
  double reduce = 0.0;
  for (int i = 0; i < 100; ++i) {
    double a = uni(rng);
    double b = uni(rng);
    if (a > b) std::swap(a, b);
    const auto q81 = theorem3_closed_form(pp.J1, pp.J2, pd.phi(b), pd.phi(a), pp.zeta / pd.lambda * (pd.phi(b) - pd.phi(a)));
    const auto q75 = theorem3_closed_form(rp.J1, rp.J2, omega * b + eta, omega * a + eta, rf.b * rp.Omega_b * (b - a));
    reduce = std::max(reduce, qdist(q81, q75));
  }
  out.require(reduce <= 1e-12, "reduction to the rotating field " + sci(reduce));
  return out;
}

// ---------------------------------------------------------------- 5

Outcome commuting_class() {
  Outcome out;
  const HamiltonianSpec h(fixed_axis());
  const auto basis = build_basis(2);
  double worst = 0.0;
  for (double t : {5.0, 10.0}) {
    const auto oracle = stepwise_propagator(h, basis, 0.0, t, static_cast<long>(2e4 * t));
    worst = std::max(worst, max_abs(assemble_propagator(commuting_closed_form(h, 0.0, t), h.phase_integral(0.0, t)) -
                                    oracle.U));
  }
  out.require(worst <= 1e-9, "closed form vs oracle " + sci(worst));
  const auto accept = commuting_check(h, 0.0, 10.0);
  out.require(accept.kind == ClassKind::Commuting, "detector accepts fixed axis (residual " + sci(accept.residual) + ")");
  const auto reject = commuting_check(HamiltonianSpec(rotating()), 0.0, 10.0);
  out.require(reject.kind == ClassKind::None, "detector rejects rotating field (residual " + sci(reject.residual) + ")");
  return out;
}

// ---------------------------------------------------------------- 6

Outcome cocycle() {
  Outcome out;
  struct Family {
    std::string name;
    HamiltonianSpec h;
    std::function<QuaternionState(double, double)> closed;
  };
  const HamiltonianSpec rot(rotating());
  const HamiltonianSpec phi(phi_driven());
  const HamiltonianSpec fix(fixed_axis());
  const std::vector<Family> families = {
      {"rotating", rot, [&rot](double a, double b) { return theorem3_closed_form(rot, a, b); }},
      {"phi_driven", phi, [&phi](double a, double b) { return theorem3_closed_form(phi, a, b); }},
      {"fixed_axis", fix, [&fix](double a, double b) { return commuting_closed_form(fix, a, b); }},
  };
  std::mt19937_64 rng(11);
  for (const auto& fam : families) {
    std::uniform_real_distribution<double> wide(0.0, 10.0);
    std::uniform_real_distribution<double> narrow(0.0, 2.0);
    double closed = 0.0;
    double rk = 0.0;
    for (int i = 0; i < 100; ++i) {
      std::array<double, 3> ts{wide(rng), wide(rng), wide(rng)};
      std::sort(ts.begin(), ts.end());
      closed = std::max(closed, cocycle_residual(fam.closed(ts[1], ts[2]), fam.closed(ts[0], ts[1]),
                                                 fam.closed(ts[0], ts[2])));
      std::array<double, 3> us{narrow(rng), narrow(rng), narrow(rng)};
      std::sort(us.begin(), us.end());
      if (us[1] - us[0] < 1e-3 || us[2] - us[1] < 1e-3) continue;
      const IntegrationOptions opt{1e9, true};
      const auto ts_ = integrate_quaternion(fam.h, us[1], us[2], 1e-4, opt).back();
      const auto st0 = integrate_quaternion(fam.h, us[0], us[1], 1e-4, opt).back();
      const auto tt0 = integrate_quaternion(fam.h, us[0], us[2], 1e-4, opt).back();
      rk = std::max(rk, cocycle_residual(ts_, st0, tt0));
    }
    out.require(closed <= 1e-12, fam.name + " closed form " + sci(closed));
    out.require(rk <= 1e-7, fam.name + " RK4 " + sci(rk));
  }
  return out;
}

// ---------------------------------------------------------------- 7

Outcome n_flow() {
  Outcome out;
  const HamiltonianSpec h(rotating());
  // Longest horizon from t = 0 on which the principal n stays inside ‖n‖ < π − 0.1.
  const auto probe = integrate_quaternion(h, 0.0, 10.0, 1e-4, {0.01, true});
  double t1 = 0.0;
  for (std::size_t i = 1; i < probe.size() && recover_n(probe.states[i]).norm() < kPi - 0.1; ++i) t1 = probe.times[i];
  const auto nt = integrate_n_ode(h, 0.0, t1, 1e-4, {0.01, true});
  const auto qt = integrate_quaternion(h, 0.0, t1, 1e-4, {0.01, true});
  double worst = 0.0;
  double nmax = 0.0;
  for (std::size_t i = 0; i < nt.size(); ++i) {
    const Vec3 n = recover_n(qt.states[i]);
    nmax = std::max(nmax, n.norm());
    worst = std::max(worst, (nt.states[i] - n).cwiseAbs().maxCoeff());
  }
  out.require(t1 > 1.0 && nmax < kPi - 0.1, fmt::format("horizon [0, {:.2f}], max |n| = {:.4f}", t1, nmax));
  out.require(worst <= 1e-6, "n-ODE vs recovered n " + sci(worst));
  const double series = std::abs(n_flow_coefficient_series(0.05) - n_flow_coefficient_direct(0.05));
  out.require(series <= 1e-12, "series vs direct at x = 0.05 " + sci(series));
  return out;
}

// ---------------------------------------------------------------- 8

Outcome general_d() {
  Outcome out;
  const auto basis = build_basis(3);
  const auto sc = structure_constants(basis);
  std::vector<TimeFn> coeffs(8, TimeFn::constant(0.0));
  coeffs[0] = TimeFn::sinusoid(1.0, 1.0, kPi / 2.0, 0.0);
  coeffs[3] = TimeFn::sinusoid(1.0, 1.0, 0.0, 0.0);
  const QuditHamiltonianSpec h(3, TimeFn::constant(0.0), coeffs);

  const auto traj = integrate_gellmann_ode(h, sc, 0.0, 5.0, 1e-4, {0.01, true});
  double worst = 0.0;
  for (std::size_t i : {traj.size() / 2, traj.size() - 1}) {
    const double t = traj.times[i];
    const auto oracle = stepwise_propagator(h, basis, 0.0, t, static_cast<long>(4e4 * t));
    worst = std::max(worst, max_abs(assemble_qudit_propagator(traj.states[i], traj.phases[i], basis) - oracle.U));
  }
  out.require(worst <= 1e-6, "d=3 ODE vs oracle " + sci(worst));
  double vec = 0.0;
  double scalar = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    vec = std::max(vec, traj.vector_residuals[i]);
    scalar = std::max(scalar, traj.norm_defects[i]);
  }
  out.require(vec <= 1e-6, "bilinear first integrals " + sci(vec));
  out.require(scalar <= 1e-6, "scalar first integral (pre-renormalization) " + sci(scalar));

  const HamiltonianSpec q(rotating());
  const auto sc2 = structure_constants(build_basis(2));
  const auto general = integrate_gellmann_ode(to_field(q), sc2, 0.0, 10.0, 1e-4, {0.01, true});
  const auto qubit = integrate_quaternion(q, 0.0, 10.0, 1e-4, {0.01, true});
  double cross = 0.0;
  for (std::size_t i = 0; i < qubit.size(); ++i) {
    const auto& g = general.states[i];
    const auto& s = qubit.states[i];
    cross = std::max(cross, std::abs(g.u0 - s.u0));
    for (int j = 0; j < 3; ++j) cross = std::max(cross, std::abs(g.u(j) - s.u(j)));
  }
  out.require(cross <= 1e-9, "d=2 general vs qubit path " + sci(cross));
  return out;
}

// ---------------------------------------------------------------- 9

Outcome pure_state() {
  Outcome out;
  const auto f = rotating(0.7);
  const HamiltonianSpec h(f);
  const auto basis = build_basis(2);
  const auto par = rotating_field_params(f);
  CVector ket0(2);
  ket0 << 1.0, 0.0;
  double inside = 0.0;
  double outside = 0.0;
  for (double t : {3.0, 10.0}) {
    const auto oracle = stepwise_propagator(h, basis, 0.0, t, static_cast<long>(2e4 * t));
    const CVector ref = evolve_pure_state(oracle.U, ket0);
    inside = std::max(inside, (rotating_field_pure_state(f, t) - ref).cwiseAbs().maxCoeff());
    // η read as a real exponent: e^{iωt/2} e^{η}
    CVector alt = rotating_field_pure_state(f, t);
    alt(1) = cplx{0.0, -par.J2 * std::sin(f.b * par.Omega_b * t)} * std::exp(cplx{0.0, 0.5 * f.omega * t}) *
             std::exp(f.eta);
    outside = std::max(outside, (alt - ref).cwiseAbs().maxCoeff());
  }
  out.require(inside <= 1e-7, "amplitudes with exp{i(wt/2 + eta)} vs oracle " + sci(inside));
  out.require(outside > 1e-3, "real-eta reading rejected, misses by " + sci(outside));
  return out;
}

// ---------------------------------------------------------------- 10

Outcome order_checks() {
  Outcome out;
  const HamiltonianSpec h(phi_driven());
  const IntegrationOptions raw{1e9, false};
  const auto ref = integrate_quaternion(h, 0.0, 5.0, 0.001, raw).back();
  const double e1 = qdist(integrate_quaternion(h, 0.0, 5.0, 0.02, raw).back(), ref);
  const double e2 = qdist(integrate_quaternion(h, 0.0, 5.0, 0.01, raw).back(), ref);
  const double rk_ratio = e1 / e2;
  out.require(std::abs(rk_ratio - 16.0) <= 3.0, "RK4 error ratio under halving " + fmt::format("{:.3f}", rk_ratio));

  const HamiltonianSpec rot(rotating());
  const auto basis = build_basis(2);
  const CMatrix fine = midpoint_product(to_field(rot), basis, 0.0, 10.0, 51200);
  const double o1 = max_abs(midpoint_product(to_field(rot), basis, 0.0, 10.0, 400) - fine);
  const double o2 = max_abs(midpoint_product(to_field(rot), basis, 0.0, 10.0, 800) - fine);
  const double oracle_ratio = o1 / o2;
  out.require(std::abs(oracle_ratio - 4.0) <= 0.5, "oracle error ratio under halving " + fmt::format("{:.3f}", oracle_ratio));
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 algebra", algebra},
      {"AC2 exponential map", exponential_map},
      {"AC3 theorem3 class, rotating field", theorem3_rotating},
      {"AC4 phi-driven family", phi_driven_family},
      {"AC5 commuting class", commuting_class},
      {"AC6 cocycle", cocycle},
      {"AC7 n-flow", n_flow},
      {"AC8 general d", general_d},
      {"AC9 pure state", pure_state},
      {"AC10 order checks", order_checks},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("{} {} ({:.1f}s): {}\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
