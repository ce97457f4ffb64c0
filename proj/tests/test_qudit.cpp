#include <doctest.h>

#include "qevo/oracle.hpp"
#include "qevo/qubit_evolution.hpp"
#include "qevo/qudit_evolution.hpp"
#include "support.hpp"

using namespace qevo;

namespace {

QuditHamiltonianSpec constant_qudit(int d, const RVector& b, double b0 = 0.0) {
  std::vector<TimeFn> fns;
  for (int i = 0; i < b.size(); ++i) fns.push_back(TimeFn::constant(b(i)));
  return QuditHamiltonianSpec(d, TimeFn::constant(b0), fns);
}

QuditHamiltonianSpec qutrit_rotating() {
  std::vector<TimeFn> fns(8, TimeFn::constant(0.0));
  fns[0] = TimeFn::sinusoid(1.0, 1.0, 1.5707963267948966, 0.0);
  fns[3] = TimeFn::sinusoid(1.0, 1.0, 0.0, 0.0);
  fns[7] = TimeFn::constant(0.3);
  return QuditHamiltonianSpec(3, TimeFn::constant(0.1), fns);
}

}  // namespace

TEST_SUITE("qudit") {
  TEST_CASE("zero Hamiltonian") {
    const auto b = build_basis(3);
    const auto sc = structure_constants(b);
    const auto traj = integrate_gellmann_ode(constant_qudit(3, RVector::Zero(8)), sc, 0.0, 1.0, 1e-2);
    const auto& c = traj.back();
    CHECK(std::abs(c.u0 - 1.0) == 0.0);
    CHECK(c.u.norm() == 0.0);
    CHECK(max_abs(assemble_qudit_propagator(c, 0.0, b) - CMatrix::Identity(3, 3)) == 0.0);
  }

  TEST_CASE("constant qutrit Hamiltonian matches the matrix exponential") {
    std::mt19937_64 rng(41);
    const auto b = build_basis(3);
    const auto sc = structure_constants(b);
    const RVector r = test::random_vector(rng, 8, 0.6);
    const auto h = constant_qudit(3, r, 0.4);
    const auto traj = integrate_gellmann_ode(h, sc, 0.0, 2.0, 1e-3);
    const CMatrix u = assemble_qudit_propagator(traj.back(), traj.phases.back(), b);
    const CMatrix exact = hermitian_exp(hamiltonian_matrix(to_field(h), b, 0.0), 2.0);
    CHECK(max_abs(u - exact) <= 1e-11);
    CHECK(max_abs(u - commuting_closed_form_general(h, b, 0.0, 2.0)) <= 1e-11);
  }

  TEST_CASE("d = 2 coordinates are real up to the i convention") {
    const auto b = build_basis(2);
    const auto sc = structure_constants(b);
    std::vector<TimeFn> fns{TimeFn::sinusoid(1.0, 2.0, 0.0, 0.0), TimeFn::linear(0.3, -0.2), TimeFn::constant(0.7)};
    const QuditHamiltonianSpec h(2, TimeFn::constant(0.0), fns);
    const auto traj = integrate_gellmann_ode(h, sc, 0.0, 2.0, 1e-3);
    CHECK(std::abs(traj.back().u0.imag()) <= 1e-13);
    CHECK(traj.back().u.imag().cwiseAbs().maxCoeff() <= 1e-13);
  }

  TEST_CASE("first integral examples") {
    const auto sc = structure_constants(build_basis(3));
    const auto id = first_integral_residuals(QuditCoords::identity(8), sc);
    CHECK(id.scalar_residual == 0.0);
    CHECK(id.max_vector() == 0.0);

    QuditCoords bad = QuditCoords::identity(8);
    bad.u(2) = 0.5;
    const auto r = first_integral_residuals(bad, sc);
    CHECK(r.scalar_residual == doctest::Approx(0.25));
    CHECK(r.max_vector() > 0.1);
  }

  TEST_CASE("first integrals hold along a time-dependent qutrit flow") {
    const auto sc = structure_constants(build_basis(3));
    const auto traj = integrate_gellmann_ode(qutrit_rotating(), sc, 0.0, 3.0, 1e-3, {0.5, true});
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const auto r = first_integral_residuals(traj.states[i], sc);
      CHECK(std::abs(r.scalar_residual) <= 1e-13);
      CHECK(r.max_vector() <= 1e-10);
      CHECK(traj.vector_residuals[i] <= 1e-10);
    }
  }

  TEST_CASE("time-dependent qutrit flow matches the oracle") {
    const auto b = build_basis(3);
    const auto sc = structure_constants(b);
    const auto h = qutrit_rotating();
    const auto traj = integrate_gellmann_ode(h, sc, 0.0, 3.0, 1e-3);
    const CMatrix u = assemble_qudit_propagator(traj.back(), traj.phases.back(), b);
    const auto oracle = stepwise_propagator(h, b, 0.0, 3.0, 20000);
    CHECK(max_abs(u - oracle.U) <= 1e-7);
    CHECK(unitarity_defect(u) <= 1e-12);
  }

  TEST_CASE("generator acts as the qubit skew matrix for d = 2") {
    const auto sc = structure_constants(build_basis(2));
    const RVector b = (RVector(3) << 0.2, -0.5, 0.9).finished();
    const CMatrix g = gellmann_generator(b, sc);
    const Eigen::Matrix4d a = skew_matrix(Vec3(b(0), b(1), b(2)));
    CHECK(max_abs(g - a.cast<cplx>()) <= 1e-15);
  }

  TEST_CASE("general commuting check") {
    const auto b = build_basis(4);
    const auto sc = structure_constants(b);
    std::vector<TimeFn> fns(15, TimeFn::constant(0.0));
    fns[12] = TimeFn::sinusoid(1.0, 2.0, 0.0, 0.5);
    fns[14] = TimeFn::linear(0.3, 0.1);
    const QuditHamiltonianSpec diag(4, TimeFn::constant(0.0), fns);
    const auto yes = commuting_check_general(diag, sc, 0.0, 2.0);
    CHECK(yes.commuting);
    const auto traj = integrate_gellmann_ode(diag, sc, 0.0, 2.0, 1e-3);
    CHECK(max_abs(assemble_qudit_propagator(traj.back(), traj.phases.back(), b) -
                  commuting_closed_form_general(diag, b, 0.0, 2.0)) <= 1e-11);

    fns[0] = TimeFn::sinusoid(1.0, 1.0, 0.0, 0.0);
    const QuditHamiltonianSpec mixed(4, TimeFn::constant(0.0), fns);
    CHECK_FALSE(commuting_check_general(mixed, sc, 0.0, 2.0).commuting);
  }

  TEST_CASE("forward map identity") {
    std::mt19937_64 rng(43);
    for (int d = 2; d <= 4; ++d) {
      const auto b = build_basis(d);
      const RVector n = test::random_vector(rng, d * d - 1, 0.5);
      CHECK(forward_map_check(n, b) <= (d <= 3 ? 1e-12 : 1e-8));
    }
  }

  TEST_CASE("assemble rejects non-normalized coordinates") {
    QuditCoords c = QuditCoords::identity(8);
    c.u0 = 1.1;
    CHECK_THROWS_AS(assemble_qudit_propagator(c, 0.0, build_basis(3)), PreconditionError);
  }
}

TEST_SUITE("oracle") {
  TEST_CASE("zero Hamiltonian is exact") {
    const auto b = build_basis(3);
    const auto r = stepwise_propagator(QuditHamiltonianSpec(3, TimeFn::constant(0.0), std::vector<TimeFn>(8)), b, 0.0,
                                       1.0, 10);
    CHECK(max_abs(r.U - CMatrix::Identity(3, 3)) <= 1e-15);
    CHECK(r.richardson_error_estimate <= 1e-15);
  }

  TEST_CASE("constant Hamiltonian is exact for any step count") {
    std::mt19937_64 rng(51);
    const auto b = build_basis(2);
    const Vec3 v = test::random_vector(rng, 3);
    const HamiltonianSpec h = HamiltonianSpec::Constant{0.3, v};
    const CMatrix exact = hermitian_exp(hamiltonian_matrix(to_field(h), b, 0.0), 1.5);
    CHECK(max_abs(midpoint_product(to_field(h), b, 0.0, 1.5, 7) - exact) <= 1e-13);
  }

  TEST_CASE("second-order convergence and Richardson estimate") {
    const auto b = build_basis(2);
    const HamiltonianSpec h = HamiltonianSpec::RotatingField{1.0, 0.8, 2.0, 0.0, TimeFn::constant(0.0)};
    const auto ref = stepwise_propagator(h, b, 0.0, 2.0, 8000).U;
    const auto coarse = stepwise_propagator(h, b, 0.0, 2.0, 200);
    const double e1 = max_abs(coarse.U - ref);
    const double e2 = max_abs(midpoint_product(to_field(h), b, 0.0, 2.0, 400) - ref);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
    CHECK(coarse.richardson_error_estimate == doctest::Approx(e1).epsilon(0.05));
  }

  TEST_CASE("cocycle of oracle propagators") {
    const auto b = build_basis(2);
    const HamiltonianSpec h = HamiltonianSpec::RotatingField{1.0, 0.8, 2.0, 0.0, TimeFn::constant(0.0)};
    const CMatrix a = midpoint_product(to_field(h), b, 0.0, 1.0, 1000);
    const CMatrix c = midpoint_product(to_field(h), b, 1.0, 2.0, 1000);
    const CMatrix full = midpoint_product(to_field(h), b, 0.0, 2.0, 2000);
    CHECK(max_abs(c * a - full) <= 1e-13);
  }

  TEST_CASE("unitary distance") {
    const CMatrix u = test::pauli(0);
    const CMatrix v = std::exp(cplx{0.0, 0.7}) * u;
    const auto d = unitary_distance(u, v);
    CHECK(d.max_abs == doctest::Approx(std::abs(1.0 - std::exp(cplx{0.0, 0.7}))));
    CHECK(d.phase_invariant <= 1e-15);
    CHECK(unitary_distance(u, u).max_abs == 0.0);
  }

  TEST_CASE("step count validation") {
    const auto b = build_basis(2);
    const HamiltonianSpec h = HamiltonianSpec::Constant{0.0, Vec3::UnitX()};
    CHECK_THROWS_AS(midpoint_product(to_field(h), b, 0.0, 1.0, 1), ConfigError);
  }
}
