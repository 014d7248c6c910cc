#include "heraldsim/code.hpp"

#include <stdexcept>

namespace heraldsim {

namespace {
constexpr uint32_t kNoQubit = UINT32_MAX;
}

const char* family_name(CodeFamily f) {
  switch (f) {
    case CodeFamily::RotatedSurface: return "rotated";
    case CodeFamily::PlanarSurface: return "planar";
    case CodeFamily::BaconShor: return "baconshor";
  }
  return "?";
}

uint32_t QubitAlloc::data(int r, int c) {
  auto [it, inserted] = data_.try_emplace({r, c}, next_);
  if (inserted) ++next_;
  return it->second;
}

uint32_t QubitAlloc::ancilla(int r, int c) {
  auto [it, inserted] = anc_.try_emplace({r, c}, next_);
  if (inserted) ++next_;
  return it->second;
}

PauliString PatchLayout::logical_x(uint32_t total_qubits) const {
  PauliString p(total_qubits);
  for (uint32_t q : logical_x_qubits) p.set_x(q, true);
  return p;
}

PauliString PatchLayout::logical_z(uint32_t total_qubits) const {
  PauliString p(total_qubits);
  for (uint32_t q : logical_z_qubits) p.set_z(q, true);
  return p;
}

namespace {

std::string check_tag(char type, int r, int c) {
  return std::string(1, type) + ":" + std::to_string(r) + "." +
         std::to_string(c);
}

// Rotated surface on a full rows x cols data grid.  Plaquette anchors sit at
// (r, c) with corners (r..r+1, c..c+1); type Z iff global (r+c) is even.
// Bulk plaquettes (4 corners) always kept; boundary halves kept on the
// top/bottom edges for Z and the left/right edges for X.  Logical X runs
// along row 0, logical Z along column 0.
void fill_rotated(PatchLayout& p, QubitAlloc& alloc) {
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      p.data.push_back(alloc.data(p.row0 + r, p.col0 + c));
    }
  }
  for (int r = -1; r < p.rows; ++r) {
    for (int c = -1; c < p.cols; ++c) {
      const int gr = p.row0 + r, gc = p.col0 + c;
      const char type = ((gr + gc) & 1) == 0 ? 'Z' : 'X';
      // Corner order: NW, NE, SW, SE.
      const int cr[4] = {r, r, r + 1, r + 1};
      const int cc[4] = {c, c + 1, c, c + 1};
      std::vector<uint32_t> slots(4, kNoQubit);
      int inside = 0;
      for (int k = 0; k < 4; ++k) {
        if (cr[k] >= 0 && cr[k] < p.rows && cc[k] >= 0 && cc[k] < p.cols) {
          slots[k] = alloc.data(p.row0 + cr[k], p.col0 + cc[k]);
          ++inside;
        }
      }
      if (inside < 2) continue;
      if (inside == 2) {
        const bool vertical_edge = (c == -1 || c == p.cols - 1);
        if (vertical_edge ? type != 'X' : type != 'Z') continue;
      }
      Check ch;
      ch.type = type;
      ch.anchor = {gr, gc};
      ch.data = std::move(slots);
      ch.ancilla = alloc.ancilla(gr, gc);
      ch.tag = check_tag(type, gr, gc);
      p.checks.push_back(std::move(ch));
    }
  }
  for (int c = 0; c < p.cols; ++c) {
    p.logical_x_qubits.push_back(alloc.data(p.row0, p.col0 + c));
  }
  for (int r = 0; r < p.rows; ++r) {
    p.logical_z_qubits.push_back(alloc.data(p.row0 + r, p.col0));
  }
}

// Planar surface on a rows x cols grid with data on even global (r+c)
// parity.  X checks occupy odd-row/even-column sites, Z checks
// even-row/odd-column sites; supports are the 4-neighborhoods.
void fill_planar(PatchLayout& p, QubitAlloc& alloc) {
  auto is_data = [&](int r, int c) {
    return ((p.row0 + r + p.col0 + c) & 1) == 0;
  };
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      if (is_data(r, c)) p.data.push_back(alloc.data(p.row0 + r, p.col0 + c));
    }
  }
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      if (is_data(r, c)) continue;
      const int gr = p.row0 + r, gc = p.col0 + c;
      const char type = (gr & 1) ? 'X' : 'Z';
      // Neighbor order: N, W, E, S.
      const int nr[4] = {r - 1, r, r, r + 1};
      const int nc[4] = {c, c - 1, c + 1, c};
      std::vector<uint32_t> slots(4, kNoQubit);
      int inside = 0;
      for (int k = 0; k < 4; ++k) {
        if (nr[k] >= 0 && nr[k] < p.rows && nc[k] >= 0 && nc[k] < p.cols) {
          slots[k] = alloc.data(p.row0 + nr[k], p.col0 + nc[k]);
          ++inside;
        }
      }
      if (inside < 2) continue;
      Check ch;
      ch.type = type;
      ch.anchor = {gr, gc};
      ch.data = std::move(slots);
      ch.ancilla = alloc.ancilla(gr, gc);
      ch.tag = check_tag(type, gr, gc);
      p.checks.push_back(std::move(ch));
    }
  }
  for (int c = 0; c < p.cols; ++c) {
    if (is_data(0, c)) p.logical_x_qubits.push_back(alloc.data(p.row0, p.col0 + c));
  }
  for (int r = 0; r < p.rows; ++r) {
    if (is_data(r, 0)) p.logical_z_qubits.push_back(alloc.data(p.row0 + r, p.col0));
  }
}

// Bacon-Shor on a full rows x cols grid: XX gauges on horizontal neighbor
// pairs, ZZ gauges on vertical pairs.  Stabilizers are column-pair products
// of X gauges and row-pair products of Z gauges.  Logical X runs down
// column 0, logical Z along row 0.
void fill_baconshor(PatchLayout& p, QubitAlloc& alloc) {
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      p.data.push_back(alloc.data(p.row0 + r, p.col0 + c));
    }
  }
  std::map<int, std::vector<uint32_t>> x_cols, z_rows;
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c + 1 < p.cols; ++c) {
      GaugeOp g;
      g.type = 'X';
      g.q0 = alloc.data(p.row0 + r, p.col0 + c);
      g.q1 = alloc.data(p.row0 + r, p.col0 + c + 1);
      g.group = c & 1;
      g.site = {p.row0 + r, p.col0 + c};
      x_cols[c].push_back(static_cast<uint32_t>(p.gauges.size()));
      p.gauges.push_back(g);
    }
  }
  for (int r = 0; r + 1 < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      GaugeOp g;
      g.type = 'Z';
      g.q0 = alloc.data(p.row0 + r, p.col0 + c);
      g.q1 = alloc.data(p.row0 + r + 1, p.col0 + c);
      g.group = 2 + (r & 1);
      g.site = {p.row0 + r, p.col0 + c};
      z_rows[r].push_back(static_cast<uint32_t>(p.gauges.size()));
      p.gauges.push_back(g);
    }
  }
  for (auto& [c, idx] : x_cols) {
    p.stabilizers.push_back(
        {'X', idx, check_tag('X', p.row0, p.col0 + c) + "cp"});
  }
  for (auto& [r, idx] : z_rows) {
    p.stabilizers.push_back(
        {'Z', idx, check_tag('Z', p.row0 + r, p.col0) + "rp"});
  }
  for (int r = 0; r < p.rows; ++r) {
    p.logical_x_qubits.push_back(alloc.data(p.row0 + r, p.col0));
  }
  for (int c = 0; c < p.cols; ++c) {
    p.logical_z_qubits.push_back(alloc.data(p.row0, p.col0 + c));
  }
}

}  // namespace

PatchLayout make_layout(CodeFamily family, QubitAlloc& alloc, int row0,
                        int col0, int rows, int cols) {
  PatchLayout p;
  p.family = family;
  p.rows = rows;
  p.cols = cols;
  p.row0 = row0;
  p.col0 = col0;
  switch (family) {
    case CodeFamily::RotatedSurface: fill_rotated(p, alloc); break;
    case CodeFamily::PlanarSurface: fill_planar(p, alloc); break;
    case CodeFamily::BaconShor: fill_baconshor(p, alloc); break;
  }
  return p;
}

BuiltPatch build_patch(const CodeSpec& spec) {
  if (spec.d < 3 || (spec.d & 1) == 0) {
    throw std::invalid_argument("distance must be odd and >= 3");
  }
  QubitAlloc alloc;
  BuiltPatch bp;
  const int g = spec.family == CodeFamily::PlanarSurface ? 2 * spec.d - 1
                                                         : spec.d;
  bp.layout = make_layout(spec.family, alloc, 0, 0, g, g);
  bp.num_qubits = alloc.count();
  return bp;
}

CyclePlan cycle_plan(const CodeSpec& spec, const GateTimes& times,
                     bool native_parity) {
  CyclePlan plan;
  if (spec.family == CodeFamily::BaconShor) {
    if (native_parity) {
      // Native parity layers carry the cost of their transpiled realization
      // so the cycle time matches the transpiled formula.
      const double dx = 2 * times.t_cx + 2 * times.t_h + times.t_m;
      const double dz = 2 * times.t_cx + times.t_m;
      plan.layer_durations = {dx, dx, dz, dz};
    } else {
      for (int g = 0; g < 2; ++g) {  // X gauge sub-layers
        for (double t : {times.t_cx, times.t_h, times.t_m, times.t_h,
                         times.t_cx}) {
          plan.layer_durations.push_back(t);
        }
      }
      for (int g = 0; g < 2; ++g) {  // Z gauge sub-layers
        for (double t : {times.t_cx, times.t_m, times.t_cx}) {
          plan.layer_durations.push_back(t);
        }
      }
    }
  } else {
    plan.layer_durations = {times.t_h,  times.t_cx, times.t_cx, times.t_cx,
                            times.t_cx, times.t_h,  times.t_m};
  }
  for (double t : plan.layer_durations) plan.t_cycle += t;
  return plan;
}

std::pair<int, int> logical_bell_error(int zz_raw, int xx_raw,
                                       int zz_correction, int xx_correction) {
  return {zz_raw ^ zz_correction, xx_raw ^ xx_correction};
}

}  // namespace heraldsim
