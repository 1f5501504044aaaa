#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tofkit/constructions.hpp"
#include "tofkit/simulate.hpp"

using namespace tofkit;

namespace {
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
}

TEST_CASE("measurement-free circuit yields a single branch") {
  Circuit c = append(build(2, 0), Gate::cnot(0, 1));
  auto branches = run(c, StateVector::basis(2, 0b10));
  REQUIRE(branches.size() == 1);
  CHECK(branches[0].probability == doctest::Approx(1.0));
  CHECK(std::abs(branches[0].state.amplitudes[0b11] - cplx{1.0}) < 1e-12);
}

TEST_CASE("four-T Toffoli on |110> splits into two equal branches") {
  Circuit c = build_four_t_toffoli();
  StateVector in = initial_state(c, StateVector::basis(3, 0b110), {0, 1, 2});
  auto branches = run(c, in);
  REQUIRE(branches.size() == 2);
  StateVector expected = StateVector::basis(3, 0b111);
  for (const Branch& br : branches) {
    CHECK(br.probability == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(data_residual(br.state, {0, 1, 2}, expected) < 1e-10);
  }
}

TEST_CASE("noiseless error-detecting Toffoli is deterministic with syndrome 0") {
  Circuit c = build_error_detecting_toffoli();
  for (int i = 0; i < 8; ++i) {
    StateVector in = initial_state(c, StateVector::basis(3, i), {0, 1, 2});
    auto branches = run(c, in);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].outcomes.at(0) == 0);
    CHECK(branches[0].probability == doctest::Approx(1.0));
  }
}

TEST_CASE("run rejects dimension mismatch and missing fixed bits") {
  Circuit c = append(build(2, 1), Gate::measure_z(0, 0));
  CHECK_THROWS_AS(run(c, StateVector::basis(3, 0)), SimulationError);
  CHECK_THROWS_AS(run(c, StateVector::basis(2, 0), FixedOutcomes{{}}),
                  SimulationError);
}

TEST_CASE("fixed outcomes select the requested branch") {
  Circuit c = build(1, 1);
  c = append(c, Gate::single(GateKind::H, 0));
  c = append(c, Gate::measure_z(0, 0));
  auto branches = run(c, StateVector::basis(1, 0), FixedOutcomes{{{0, 1}}});
  REQUIRE(branches.size() == 1);
  CHECK(branches[0].outcomes.at(0) == 1);
  CHECK(branches[0].probability == doctest::Approx(0.5));
}

TEST_CASE("extract_unitary basics") {
  CHECK(phase_insensitive_distance(extract_unitary(build(2, 0)),
                                   DenseUnitary::identity(4)) < 1e-12);

  Circuit h = append(build(1, 0), Gate::single(GateKind::H, 0));
  DenseUnitary u = extract_unitary(h);
  CHECK(std::abs(u.at(0, 0) - cplx{kInvSqrt2}) < 1e-12);
  CHECK(std::abs(u.at(0, 1) - cplx{kInvSqrt2}) < 1e-12);
  CHECK(std::abs(u.at(1, 0) - cplx{kInvSqrt2}) < 1e-12);
  CHECK(std::abs(u.at(1, 1) + cplx{kInvSqrt2}) < 1e-12);

  Circuit m = append(build(1, 1), Gate::measure_z(0, 0));
  CHECK_THROWS_AS(extract_unitary(m), SimulationError);
}

TEST_CASE("toffoli_star unitary equals Tof * CSdg with -i on |110> -> |111>") {
  DenseUnitary u = extract_unitary(build_toffoli_star());
  CHECK(u.is_unitary());
  DenseUnitary expected =
      multiply(reference_toffoli(), kron(controlled_s_dagger(),
                                        DenseUnitary::identity(2)));
  CHECK(phase_insensitive_distance(u, expected) < 1e-10);
  CHECK(std::abs(u.at(0b111, 0b110) - cplx{0.0, -1.0}) < 1e-10);
}

TEST_CASE("phase_insensitive_distance") {
  DenseUnitary u = extract_unitary(build_toffoli_star());
  CHECK(phase_insensitive_distance(u, u) == doctest::Approx(0.0).epsilon(1e-12));

  DenseUnitary neg = u;
  for (auto& e : neg.entries) e = -e;
  CHECK(phase_insensitive_distance(u, neg) < 1e-12);

  DenseUnitary z = DenseUnitary::identity(2);
  z.at(1, 1) = -1.0;
  CHECK(phase_insensitive_distance(DenseUnitary::identity(2), z) ==
        doctest::Approx(1.0));

  CHECK_THROWS_AS(phase_insensitive_distance(z, DenseUnitary::identity(4)),
                  SimulationError);
}

TEST_CASE("norm preservation under random unitary circuits") {
  std::mt19937_64 rng(3);
  const GateKind singles[] = {GateKind::H, GateKind::X,   GateKind::Z,
                              GateKind::S, GateKind::Sdg, GateKind::T,
                              GateKind::Tdg};
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c(3, 0);
    for (int i = 0; i < 20; ++i) {
      if (rng() % 3 == 0) {
        int a = static_cast<int>(rng() % 3);
        int b = (a + 1 + static_cast<int>(rng() % 2)) % 3;
        c = c.appended(rng() % 2 ? Gate::cnot(a, b) : Gate::cz(a, b));
      } else {
        c = c.appended(
            Gate::single(singles[rng() % 7], static_cast<int>(rng() % 3)));
      }
    }
    StateVector in = random_state(3, 1000 + static_cast<uint64_t>(trial));
    auto branches = run(c, in);
    CHECK(std::abs(branches[0].state.norm_sq() - 1.0) < 1e-12);
  }
}

TEST_CASE("extract_unitary of inverse equals adjoint") {
  Circuit c = build_toffoli_star();
  DenseUnitary inv = extract_unitary(inverse(c));
  DenseUnitary adj = extract_unitary(c).adjoint();
  CHECK(phase_insensitive_distance(inv, adj) < 1e-10);
  double max_err = 0.0;
  for (size_t i = 0; i < inv.entries.size(); ++i) {
    max_err = std::max(max_err, std::abs(inv.entries[i] - adj.entries[i]));
  }
  CHECK(max_err < 1e-10);
}

TEST_CASE("gadget_implements diagnostics on a failing gadget") {
  // Toffoli* alone is not a Toffoli: the |11> control phase gives it away.
  auto result =
      gadget_implements(build_toffoli_star(), reference_toffoli(), {0, 1, 2});
  CHECK_FALSE(result.pass);
  CHECK(!result.diagnostics.empty());
}

TEST_CASE("sampling matches branch statistics on the four-T Toffoli") {
  Circuit c = build_four_t_toffoli();
  StateVector in = initial_state(c, StateVector::basis(3, 0b110), {0, 1, 2});
  const int trials = 100000;
  int ones = 0;
  for (int t = 0; t < trials; ++t) {
    auto branches =
        run(c, in, SampleOutcome{static_cast<uint64_t>(t) * 2654435761u + 17});
    REQUIRE(branches.size() == 1);
    ones += branches[0].outcomes.at(0);
  }
  double freq = static_cast<double>(ones) / trials;
  CHECK(freq == doctest::Approx(0.5).epsilon(0.02));  // 0.5 +/- 0.01
  CHECK(std::abs(freq - 0.5) < 0.01);

  // identical seed -> identical draw
  auto a = run(c, in, SampleOutcome{42});
  auto b = run(c, in, SampleOutcome{42});
  CHECK(a[0].outcomes == b[0].outcomes);
}
