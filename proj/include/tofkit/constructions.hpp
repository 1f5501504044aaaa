#pragma once

#include "tofkit/circuit.hpp"
#include "tofkit/simulate.hpp"

namespace tofkit {

/// |x,y,z> -> |x,y,z^xy>: the 8x8 permutation swapping |110> and |111>.
DenseUnitary reference_toffoli();

/// Two-qubit controlled-S (phase +i on |11>) and its inverse.
DenseUnitary controlled_s();
DenseUnitary controlled_s_dagger();

/// Block-diagonal controlled version of `base`, control on the high qubit.
DenseUnitary controlled_matrix(const DenseUnitary& base);

/// Appends a 4-T almost-Toffoli on (x, y, target): equal to Tof followed by
/// controlled-S^dag on (x, y). Exposed so builders can splice it anywhere.
Circuit append_toffoli_star(Circuit c, int x, int y, int target);
Circuit append_toffoli_star_dagger(Circuit c, int x, int y, int target);

/// 3-qubit measurement-free circuit on (q0=x, q1=y, q2=target); t_count 4.
Circuit build_toffoli_star();
Circuit build_toffoli_star_dagger();

/// Exact Toffoli on data (q0, q1, q2) using 4 T gates, one |0> ancilla (q3),
/// one measurement, and a conditional CZ correction.
Circuit build_four_t_toffoli();

/// Error-detecting Toffoli on data (q0=x, q1=y, q2=target) with a bit-flip
/// code ancilla q3; 8 T gates; the syndrome measurement writes c0 and reads 1
/// whenever a single Z fault struck any T gate.
Circuit build_error_detecting_toffoli();

/// Probabilistic Toffoli-ancilla production: the error-detecting circuit on
/// x=|+>, y=|+>, target=|0>. On syndrome 0, qubits (0,1,2) hold
/// (|000>+|010>+|100>+|111>)/2.
Circuit build_ancilla_prep();

/// The accepted prep output state on 3 qubits.
StateVector toffoli_ancilla_state();

/// Teleports data (q0, q1, q2) through a Toffoli ancilla held on (q3, q4, q5);
/// Clifford corrections only, all 8 outcome branches enact Tof on the data.
Circuit build_ancilla_consumption();

/// Prep and consumption spliced into one 7-qubit circuit for end-to-end
/// verification: data (q0..q2), ancilla block (q3..q6), syndrome c0 then
/// teleportation bits c1..c3.
Circuit build_teleported_toffoli();

/// Textbook measurement-free decomposition with 7 T gates; unitary = Tof.
Circuit build_standard_seven_t_toffoli();

/// A controlled gate: `base` is the unitary being controlled, `realization`
/// implements controlled-base with qubit 0 as the control and qubits
/// 1..k as the base wires (later qubits are internal ancillas).
struct ControlledGate {
  DenseUnitary base;
  Circuit realization{0, 0};
  int t_cost = 0;
  bool verified = false;
};

ControlledGate controlled_not_gate();
ControlledGate controlled_z_gate();

/// Adds one control to a verified controlled-G, spending 4 extra T gates.
ControlledGate extend_control(const ControlledGate& g);

/// n-fold extend_control; t_cost grows by exactly 4n.
ControlledGate build_multi_controlled(const ControlledGate& g, int n);

/// Data wires of a ControlledGate realization: the control plus base wires.
std::vector<int> controlled_gate_data_qubits(const ControlledGate& g);

/// The full unitary a ControlledGate realizes: controlled(base).
DenseUnitary full_unitary(const ControlledGate& g);

}  // namespace tofkit
