#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tofkit/circuit.hpp"

using namespace tofkit;

TEST_CASE("build and append") {
  Circuit c = build(1, 0);
  c = append(c, Gate::single(GateKind::H, 0));
  CHECK(c.gates().size() == 1);
  CHECK(c.t_count() == 0);
}

TEST_CASE("t_sites tracks T and Tdg in program order") {
  Circuit c = build(1, 0);
  c = append(c, Gate::single(GateKind::T, 0));
  c = append(c, Gate::single(GateKind::Tdg, 0));
  CHECK(c.t_sites() == std::vector<int>{0, 1});
  CHECK(c.t_count() == 2);
}

TEST_CASE("identical CNOT operands rejected") {
  Circuit c = build(2, 0);
  CHECK_THROWS_WITH_AS(c.appended(Gate::cnot(0, 0)),
                       doctest::Contains("identical operands"), CircuitError);
}

TEST_CASE("out-of-range operand names the gate and index") {
  Circuit c = build(2, 0);
  CHECK_THROWS_WITH_AS(c.appended(Gate::single(GateKind::T, 5)),
                       doctest::Contains("T: qubit index 5"), CircuitError);
}

TEST_CASE("classical bits are write-once and write-before-read") {
  Circuit c = build(2, 1);
  CHECK_THROWS_AS(c.appended(Gate::conditional(0, Gate::cz(0, 1))),
                  CircuitError);
  c = c.appended(Gate::measure_z(0, 0));
  CHECK_THROWS_AS(c.appended(Gate::measure_z(1, 0)), CircuitError);
  CHECK_NOTHROW(c.appended(Gate::conditional(0, Gate::cz(0, 1))));
}

TEST_CASE("append never mutates the original") {
  Circuit a = build(1, 0);
  Circuit b = append(a, Gate::single(GateKind::H, 0));
  CHECK(a.gates().empty());
  CHECK(b.gates().size() == 1);
}

TEST_CASE("inverse of simple circuits") {
  Circuit h = append(build(1, 0), Gate::single(GateKind::H, 0));
  CHECK(inverse(h).gates() == h.gates());

  Circuit c = build(2, 0);
  c = append(c, Gate::single(GateKind::T, 0));
  c = append(c, Gate::cnot(0, 1));
  Circuit inv = inverse(c);
  REQUIRE(inv.gates().size() == 2);
  CHECK(inv.gates()[0] == Gate::cnot(0, 1));
  CHECK(inv.gates()[1] == Gate::single(GateKind::Tdg, 0));
}

TEST_CASE("inverse rejects measurements") {
  Circuit c = append(build(1, 1), Gate::measure_z(0, 0));
  CHECK_THROWS_WITH_AS(inverse(c), doctest::Contains("no inverse"),
                       CircuitError);
}

namespace {

Circuit random_circuit(std::mt19937_64& rng, bool unitary_only) {
  const int qubits = 2 + static_cast<int>(rng() % 3);
  const int cbits = 3;
  Circuit c(qubits, cbits);
  if (rng() % 2) c = c.with_init(0, InitState::zero);
  if (rng() % 3 == 0) c = c.with_init(1, InitState::plus);
  int next_bit = 0;
  const GateKind singles[] = {GateKind::H,   GateKind::X, GateKind::Z,
                              GateKind::S,   GateKind::Sdg, GateKind::T,
                              GateKind::Tdg};
  const int len = 4 + static_cast<int>(rng() % 12);
  for (int i = 0; i < len; ++i) {
    int q = static_cast<int>(rng() % qubits);
    int r = static_cast<int>(rng() % qubits);
    if (r == q) r = (q + 1) % qubits;
    switch (rng() % (unitary_only ? 4u : 6u)) {
      case 0:
      case 1:
        c = c.appended(Gate::single(singles[rng() % 7], q));
        break;
      case 2:
        c = c.appended(Gate::cnot(q, r));
        break;
      case 3:
        c = c.appended(Gate::cz(q, r));
        break;
      case 4:
        if (next_bit < cbits) c = c.appended(Gate::measure_z(q, next_bit++));
        break;
      case 5:
        if (next_bit > 0) {
          c = c.appended(Gate::conditional(
              static_cast<int>(rng() % next_bit), Gate::cz(q, r)));
        }
        break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("serialize/parse round-trip is byte-identical") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Circuit c = random_circuit(rng, false);
    std::string dump = serialize(c);
    Circuit back = parse(dump);
    CHECK(serialize(back) == dump);
    CHECK(back == c);
  }
}

TEST_CASE("double inverse is the identity transform") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Circuit c = random_circuit(rng, true);
    CHECK(inverse(inverse(c)).gates() == c.gates());
  }
}

TEST_CASE("t_sites ordering matches gate order restricted to T-like gates") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Circuit c = random_circuit(rng, false);
    std::vector<int> expected;
    for (int i = 0; i < static_cast<int>(c.gates().size()); ++i) {
      if (is_t_like(c.gates()[static_cast<size_t>(i)])) expected.push_back(i);
    }
    CHECK(c.t_sites() == expected);
  }
}

TEST_CASE("dump format matches the documented shape") {
  Circuit c = build(4, 1).with_init(2, InitState::zero);
  c = append(c, Gate::single(GateKind::H, 3));
  c = append(c, Gate::cnot(0, 2));
  c = append(c, Gate::single(GateKind::T, 2));
  c = append(c, Gate::single(GateKind::Tdg, 2));
  c = append(c, Gate::measure_z(2, 0));
  c = append(c, Gate::conditional(0, Gate::cz(0, 1)));
  CHECK(serialize(c) ==
        "qubits 4\n"
        "cbits 1\n"
        "init q2 zero\n"
        "H 3\n"
        "CNOT 0 2\n"
        "T 2\n"
        "TDG 2\n"
        "MZ 2 -> c0\n"
        "IF c0: CZ 0 1\n");
}
