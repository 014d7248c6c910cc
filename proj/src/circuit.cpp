#include "heraldsim/circuit.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace heraldsim {

bool is_measurement(InstrKind k) {
  return k == InstrKind::MeasureZ || k == InstrKind::MeasureXX ||
         k == InstrKind::MeasureZZ;
}

bool is_unitary(InstrKind k) {
  return k == InstrKind::H || k == InstrKind::CX || k == InstrKind::X ||
         k == InstrKind::Z;
}

const char* kind_name(InstrKind k) {
  switch (k) {
    case InstrKind::H: return "H";
    case InstrKind::CX: return "CX";
    case InstrKind::X: return "X";
    case InstrKind::Z: return "Z";
    case InstrKind::MeasureZ: return "MZ";
    case InstrKind::MeasureXX: return "MXX";
    case InstrKind::MeasureZZ: return "MZZ";
    case InstrKind::Reset: return "RESET";
    case InstrKind::PauliError: return "ERR";
    case InstrKind::Idle: return "IDLE";
  }
  return "?";
}

namespace {

bool parse_kind(const std::string& s, InstrKind& out) {
  static const std::pair<const char*, InstrKind> table[] = {
      {"H", InstrKind::H},       {"CX", InstrKind::CX},
      {"X", InstrKind::X},       {"Z", InstrKind::Z},
      {"MZ", InstrKind::MeasureZ}, {"MXX", InstrKind::MeasureXX},
      {"MZZ", InstrKind::MeasureZZ}, {"RESET", InstrKind::Reset},
      {"ERR", InstrKind::PauliError}, {"IDLE", InstrKind::Idle},
  };
  for (auto& [name, k] : table) {
    if (s == name) { out = k; return true; }
  }
  return false;
}

void validate(const CircuitInstruction& in, uint32_t n) {
  if (in.duration < 0) throw std::invalid_argument("negative duration");
  for (uint32_t t : in.targets) {
    if (t >= n) throw std::out_of_range("instruction target out of range");
  }
  if (in.kind == InstrKind::CX || in.kind == InstrKind::MeasureXX ||
      in.kind == InstrKind::MeasureZZ) {
    if (in.targets.size() != 2 || in.targets[0] == in.targets[1]) {
      throw std::invalid_argument("two-qubit instruction needs 2 distinct targets");
    }
  }
  if (in.kind == InstrKind::PauliError &&
      in.paulis.size() != in.targets.size()) {
    throw std::invalid_argument("ERR needs one pauli letter per target");
  }
}

}  // namespace

uint32_t Circuit::num_measurements() const {
  uint32_t m = 0;
  for (const auto& in : instructions) {
    if (is_measurement(in.kind)) ++m;
  }
  return m;
}

void Circuit::append(InstrKind kind, std::initializer_list<uint32_t> targets,
                     double duration, std::string tag) {
  CircuitInstruction in;
  in.kind = kind;
  in.targets = targets;
  in.duration = duration;
  in.tag = std::move(tag);
  append(std::move(in));
}

void Circuit::append(CircuitInstruction instr) {
  validate(instr, num_qubits);
  instructions.push_back(std::move(instr));
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "QUBITS " << num_qubits << "\n";
  for (const auto& in : instructions) {
    out << kind_name(in.kind);
    if (in.kind == InstrKind::PauliError) out << ' ' << in.paulis;
    for (uint32_t t : in.targets) out << ' ' << t;
    if (in.duration != 0.0) {
      char buf[40];
      std::snprintf(buf, sizeof buf, " duration=%.17g", in.duration);
      out << buf;
    }
    if (!in.tag.empty()) out << " tag=" << in.tag;
    out << "\n";
  }
  return out.str();
}

Circuit Circuit::from_text(const std::string& text) {
  Circuit c;
  std::istringstream stream(text);
  std::string line;
  bool have_qubits = false;
  while (std::getline(stream, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "QUBITS") {
      ls >> c.num_qubits;
      have_qubits = true;
      continue;
    }
    if (!have_qubits) throw std::invalid_argument("missing QUBITS header");
    CircuitInstruction in;
    if (!parse_kind(head, in.kind)) {
      throw std::invalid_argument("unknown instruction: " + head);
    }
    std::string tok;
    bool first = true;
    while (ls >> tok) {
      if (tok.rfind("duration=", 0) == 0) {
        in.duration = std::stod(tok.substr(9));
      } else if (tok.rfind("tag=", 0) == 0) {
        in.tag = tok.substr(4);
      } else if (first && in.kind == InstrKind::PauliError &&
                 !std::isdigit(static_cast<unsigned char>(tok[0]))) {
        in.paulis = tok;
      } else {
        in.targets.push_back(static_cast<uint32_t>(std::stoul(tok)));
      }
      first = false;
    }
    c.append(std::move(in));
  }
  return c;
}

}  // namespace heraldsim
