#include "tofkit/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace tofkit {

Gate Gate::conditional(int bit, const Gate& g) {
  if (g.kind == GateKind::MeasureZ || g.kind == GateKind::Conditional) {
    throw CircuitError("conditional inner gate must be a plain unitary gate");
  }
  Gate out;
  out.kind = GateKind::Conditional;
  out.inner = g.kind;
  out.a = g.a;
  out.b = g.b;
  out.bit = bit;
  return out;
}

bool is_t_like(const Gate& g) {
  return g.kind == GateKind::T || g.kind == GateKind::Tdg;
}

namespace {

bool is_two_qubit(GateKind k) { return k == GateKind::CNOT || k == GateKind::CZ; }

GateKind inverted(GateKind k) {
  switch (k) {
    case GateKind::S:
      return GateKind::Sdg;
    case GateKind::Sdg:
      return GateKind::S;
    case GateKind::T:
      return GateKind::Tdg;
    case GateKind::Tdg:
      return GateKind::T;
    default:
      return k;  // H, X, Z, CNOT, CZ are self-inverse
  }
}

}  // namespace

Circuit::Circuit(int qubit_count, int classical_count)
    : qubit_count_(qubit_count),
      classical_count_(classical_count),
      init_(static_cast<size_t>(std::max(qubit_count, 0)), InitState::data),
      written_(static_cast<size_t>(std::max(classical_count, 0)), false) {
  if (qubit_count < 0 || classical_count < 0) {
    throw CircuitError("qubit and classical counts must be non-negative");
  }
}

void Circuit::check_gate(const Gate& g) const {
  auto check_qubit = [&](int q) {
    if (q < 0 || q >= qubit_count_) {
      std::ostringstream msg;
      msg << gate_name(g.kind == GateKind::Conditional ? g.inner : g.kind)
          << ": qubit index " << q << " out of range [0, " << qubit_count_ << ")";
      throw CircuitError(msg.str());
    }
  };
  GateKind effective = g.kind == GateKind::Conditional ? g.inner : g.kind;
  check_qubit(g.a);
  if (is_two_qubit(effective)) {
    check_qubit(g.b);
    if (g.a == g.b) {
      throw CircuitError(gate_name(effective) + ": identical operands " +
                         std::to_string(g.a));
    }
  }
  if (g.kind == GateKind::MeasureZ || g.kind == GateKind::Conditional) {
    if (g.bit < 0 || g.bit >= classical_count_) {
      throw CircuitError("classical bit index " + std::to_string(g.bit) +
                         " out of range [0, " + std::to_string(classical_count_) +
                         ")");
    }
  }
  if (g.kind == GateKind::MeasureZ && written_[static_cast<size_t>(g.bit)]) {
    throw CircuitError("classical bit c" + std::to_string(g.bit) +
                       " is write-once and already assigned");
  }
  if (g.kind == GateKind::Conditional && !written_[static_cast<size_t>(g.bit)]) {
    throw CircuitError("conditional reads c" + std::to_string(g.bit) +
                       " before any measurement writes it");
  }
}

Circuit Circuit::appended(const Gate& g) const {
  check_gate(g);
  Circuit out = *this;
  if (g.kind == GateKind::MeasureZ) {
    out.written_[static_cast<size_t>(g.bit)] = true;
  }
  out.gates_.push_back(g);
  return out;
}

Circuit Circuit::with_init(int qubit, InitState s) const {
  if (qubit < 0 || qubit >= qubit_count_) {
    throw CircuitError("init: qubit index out of range");
  }
  Circuit out = *this;
  out.init_[static_cast<size_t>(qubit)] = s;
  return out;
}

std::vector<int> Circuit::t_sites() const {
  std::vector<int> sites;
  for (int i = 0; i < static_cast<int>(gates_.size()); ++i) {
    if (is_t_like(gates_[static_cast<size_t>(i)])) sites.push_back(i);
  }
  return sites;
}

int Circuit::t_count() const { return static_cast<int>(t_sites().size()); }

bool Circuit::has_measurement() const {
  return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) {
    return g.kind == GateKind::MeasureZ || g.kind == GateKind::Conditional;
  });
}

Circuit inverse(const Circuit& c) {
  if (c.has_measurement()) {
    throw CircuitError("non-unitary circuit has no inverse");
  }
  Circuit out(c.qubit_count(), c.classical_count());
  for (int q = 0; q < c.qubit_count(); ++q) out = out.with_init(q, c.init(q));
  const auto& gates = c.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    g.kind = inverted(g.kind);
    out = out.appended(g);
  }
  return out;
}

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H:
      return "H";
    case GateKind::X:
      return "X";
    case GateKind::Z:
      return "Z";
    case GateKind::S:
      return "S";
    case GateKind::Sdg:
      return "SDG";
    case GateKind::T:
      return "T";
    case GateKind::Tdg:
      return "TDG";
    case GateKind::CNOT:
      return "CNOT";
    case GateKind::CZ:
      return "CZ";
    case GateKind::MeasureZ:
      return "MZ";
    case GateKind::Conditional:
      return "IF";
  }
  return "?";
}

namespace {

std::string init_name(InitState s) {
  switch (s) {
    case InitState::zero:
      return "zero";
    case InitState::plus:
      return "plus";
    case InitState::data:
      return "data";
  }
  return "?";
}

std::string plain_gate_line(GateKind k, int a, int b) {
  std::string line = gate_name(k) + " " + std::to_string(a);
  if (k == GateKind::CNOT || k == GateKind::CZ) {
    line += " " + std::to_string(b);
  }
  return line;
}

}  // namespace

std::string serialize(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.qubit_count() << "\n";
  out << "cbits " << c.classical_count() << "\n";
  for (int q = 0; q < c.qubit_count(); ++q) {
    if (c.init(q) != InitState::data) {
      out << "init q" << q << " " << init_name(c.init(q)) << "\n";
    }
  }
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::MeasureZ:
        out << "MZ " << g.a << " -> c" << g.bit << "\n";
        break;
      case GateKind::Conditional:
        out << "IF c" << g.bit << ": " << plain_gate_line(g.inner, g.a, g.b)
            << "\n";
        break;
      default:
        out << plain_gate_line(g.kind, g.a, g.b) << "\n";
    }
  }
  return out.str();
}

namespace {

GateKind kind_from_name(const std::string& name) {
  if (name == "H") return GateKind::H;
  if (name == "X") return GateKind::X;
  if (name == "Z") return GateKind::Z;
  if (name == "S") return GateKind::S;
  if (name == "SDG") return GateKind::Sdg;
  if (name == "T") return GateKind::T;
  if (name == "TDG") return GateKind::Tdg;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "CZ") return GateKind::CZ;
  throw CircuitError("unknown gate name '" + name + "'");
}

Gate parse_plain_gate(std::istringstream& in, const std::string& name) {
  GateKind k = kind_from_name(name);
  int a = -1, b = -1;
  if (!(in >> a)) throw CircuitError("missing operand for " + name);
  if (k == GateKind::CNOT || k == GateKind::CZ) {
    if (!(in >> b)) throw CircuitError("missing second operand for " + name);
  }
  Gate g;
  g.kind = k;
  g.a = a;
  g.b = b;
  return g;
}

int parse_cbit(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'c') {
    throw CircuitError("expected classical bit token, got '" + tok + "'");
  }
  return std::stoi(tok.substr(1));
}

}  // namespace

Circuit parse(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  int qubits = -1, cbits = -1;
  std::vector<std::pair<int, InitState>> inits;
  std::vector<Gate> gates;

  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream in(line);
    std::string head;
    in >> head;
    if (head == "qubits") {
      in >> qubits;
    } else if (head == "cbits") {
      in >> cbits;
    } else if (head == "init") {
      std::string qtok, stok;
      in >> qtok >> stok;
      if (qtok.empty() || qtok[0] != 'q') {
        throw CircuitError("bad init line: " + line);
      }
      int q = std::stoi(qtok.substr(1));
      InitState s;
      if (stok == "zero") {
        s = InitState::zero;
      } else if (stok == "plus") {
        s = InitState::plus;
      } else if (stok == "data") {
        s = InitState::data;
      } else {
        throw CircuitError("unknown init state '" + stok + "'");
      }
      inits.emplace_back(q, s);
    } else if (head == "MZ") {
      int q;
      std::string arrow, ctok;
      in >> q >> arrow >> ctok;
      if (arrow != "->") throw CircuitError("bad measurement line: " + line);
      gates.push_back(Gate::measure_z(q, parse_cbit(ctok)));
    } else if (head == "IF") {
      std::string ctok;
      in >> ctok;
      if (ctok.empty() || ctok.back() != ':') {
        throw CircuitError("bad conditional line: " + line);
      }
      int bit = parse_cbit(ctok.substr(0, ctok.size() - 1));
      std::string name;
      in >> name;
      gates.push_back(Gate::conditional(bit, parse_plain_gate(in, name)));
    } else {
      gates.push_back(parse_plain_gate(in, head));
    }
  }
  if (qubits < 0 || cbits < 0) {
    throw CircuitError("dump missing qubits/cbits header");
  }
  Circuit c(qubits, cbits);
  for (auto [q, s] : inits) c = c.with_init(q, s);
  for (const Gate& g : gates) c = c.appended(g);
  return c;
}

}  // namespace tofkit
