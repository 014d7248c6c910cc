#include "heraldsim/tableau.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace heraldsim {

namespace {
inline uint32_t words_for(uint32_t n) { return (n + 63) / 64; }
}  // namespace

TableauSim::TableauSim(uint32_t n, Rng rng, bool track_symbols,
                       uint32_t max_symbols)
    : n_(n),
      words_(words_for(n)),
      rng_(rng),
      xs_((2 * n + 1) * words_for(n), 0),
      zs_((2 * n + 1) * words_for(n), 0),
      phase_(2 * n + 1, 0),
      track_symbols_(track_symbols) {
  for (uint32_t i = 0; i < n_; ++i) {
    xw(i)[i >> 6] |= 1ull << (i & 63);          // destabilizer X_i
    zw(n_ + i)[i >> 6] |= 1ull << (i & 63);      // stabilizer Z_i
  }
  if (track_symbols_) {
    symwords_ = words_for(max_symbols == 0 ? 64 : max_symbols);
    syms_.assign(static_cast<size_t>(2 * n + 1) * symwords_, 0);
  }
}

void TableauSim::h(uint32_t q) {
  const uint32_t w = q >> 6;
  const uint64_t m = 1ull << (q & 63);
  for (uint32_t r = 0; r < 2 * n_; ++r) {
    uint64_t& xb = xw(r)[w];
    uint64_t& zb = zw(r)[w];
    if ((xb & m) && (zb & m)) phase_[r] = (phase_[r] + 2) & 3;
    uint64_t x_old = xb & m;
    xb = (xb & ~m) | (zb & m);
    zb = (zb & ~m) | x_old;
  }
}

void TableauSim::cx(uint32_t c, uint32_t t) {
  const uint32_t wc = c >> 6, wt = t >> 6;
  const uint64_t mc = 1ull << (c & 63), mt = 1ull << (t & 63);
  for (uint32_t r = 0; r < 2 * n_; ++r) {
    bool xc = xw(r)[wc] & mc, zc = zw(r)[wc] & mc;
    bool xt = xw(r)[wt] & mt, zt = zw(r)[wt] & mt;
    if (xc && zt && (xt == zc)) phase_[r] = (phase_[r] + 2) & 3;
    if (xc) xw(r)[wt] ^= mt;
    if (zt) zw(r)[wc] ^= mc;
  }
}

void TableauSim::x(uint32_t q) {
  const uint32_t w = q >> 6;
  const uint64_t m = 1ull << (q & 63);
  for (uint32_t r = 0; r < 2 * n_; ++r) {
    if (zw(r)[w] & m) phase_[r] = (phase_[r] + 2) & 3;
  }
}

void TableauSim::z(uint32_t q) {
  const uint32_t w = q >> 6;
  const uint64_t m = 1ull << (q & 63);
  for (uint32_t r = 0; r < 2 * n_; ++r) {
    if (xw(r)[w] & m) phase_[r] = (phase_[r] + 2) & 3;
  }
}

void TableauSim::apply_pauli(const PauliString& p) {
  // Conjugation by a Pauli only flips generator signs.
  for (uint32_t r = 0; r < 2 * n_; ++r) {
    uint64_t acc = 0;
    for (uint32_t w = 0; w < words_; ++w) {
      acc ^= (xw(r)[w] & p.z_words()[w]) ^ (zw(r)[w] & p.x_words()[w]);
    }
    if (std::popcount(acc) & 1) phase_[r] = (phase_[r] + 2) & 3;
  }
}

bool TableauSim::row_anticommutes(uint32_t row, const PauliString& p) const {
  uint64_t acc = 0;
  for (uint32_t w = 0; w < words_; ++w) {
    acc ^= (xw(row)[w] & p.z_words()[w]) ^ (zw(row)[w] & p.x_words()[w]);
  }
  return std::popcount(acc) & 1;
}

void TableauSim::rowsum(uint32_t h, uint32_t i) {
  // row h <- row i * row h, with the Aaronson-Gottesman phase bookkeeping.
  uint32_t plus = 0, minus = 0;
  for (uint32_t w = 0; w < words_; ++w) {
    uint64_t x1 = xw(i)[w], z1 = zw(i)[w];
    uint64_t x2 = xw(h)[w], z2 = zw(h)[w];
    uint64_t p = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & z2 & x2) |
                 (~x1 & z1 & x2 & ~z2);
    uint64_t q = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & z2 & ~x2) |
                 (~x1 & z1 & x2 & z2);
    plus += static_cast<uint32_t>(std::popcount(p));
    minus += static_cast<uint32_t>(std::popcount(q));
    xw(h)[w] ^= x1;
    zw(h)[w] ^= z1;
  }
  phase_[h] = static_cast<uint8_t>((phase_[h] + phase_[i] + plus + 4u * 1024u - minus) & 3);
  if (track_symbols_) {
    for (uint32_t w = 0; w < symwords_; ++w) sw(h)[w] ^= sw(i)[w];
  }
}

void TableauSim::row_set_pauli(uint32_t row, const PauliString& p) {
  for (uint32_t w = 0; w < words_; ++w) {
    xw(row)[w] = p.x_words()[w];
    zw(row)[w] = p.z_words()[w];
  }
  phase_[row] = (p.sign() == -1) ? 2 : 0;
  if (track_symbols_) {
    for (uint32_t w = 0; w < symwords_; ++w) sw(row)[w] = 0;
  }
}

void TableauSim::row_clear(uint32_t row) {
  for (uint32_t w = 0; w < words_; ++w) {
    xw(row)[w] = 0;
    zw(row)[w] = 0;
  }
  phase_[row] = 0;
  if (track_symbols_) {
    for (uint32_t w = 0; w < symwords_; ++w) sw(row)[w] = 0;
  }
}

int TableauSim::measure_pauli(const PauliString& p) {
  const uint32_t scratch = 2 * n_;
  uint32_t pivot = 2 * n_;
  for (uint32_t r = n_; r < 2 * n_; ++r) {
    if (row_anticommutes(r, p)) { pivot = r; break; }
  }
  uint32_t meas_index = static_cast<uint32_t>(record_.size());
  MeasurementInfo mi;
  if (pivot < 2 * n_) {
    // Random outcome.
    for (uint32_t r = 0; r < 2 * n_; ++r) {
      if (r != pivot && row_anticommutes(r, p)) rowsum(r, pivot);
    }
    // Old stabilizer becomes the destabilizer partner of p.
    for (uint32_t w = 0; w < words_; ++w) {
      xw(pivot - n_)[w] = xw(pivot)[w];
      zw(pivot - n_)[w] = zw(pivot)[w];
    }
    phase_[pivot - n_] = phase_[pivot];
    if (track_symbols_) {
      for (uint32_t w = 0; w < symwords_; ++w) sw(pivot - n_)[w] = sw(pivot)[w];
    }
    int outcome = rng_.bit() ? 1 : 0;
    row_set_pauli(pivot, p);
    if (track_symbols_) {
      uint32_t s = num_symbols_++;
      if (s >= symwords_ * 64) {
        // Grow symbol capacity.
        uint32_t new_words = symwords_ * 2;
        std::vector<uint64_t> grown(static_cast<size_t>(2 * n_ + 1) * new_words, 0);
        for (uint32_t r = 0; r <= 2 * n_; ++r) {
          for (uint32_t w = 0; w < symwords_; ++w) {
            grown[static_cast<size_t>(r) * new_words + w] = sw(r)[w];
          }
        }
        syms_ = std::move(grown);
        symwords_ = new_words;
      }
      sw(pivot)[s >> 6] |= 1ull << (s & 63);
      symbol_measurement_.push_back(meas_index);
      phase_[pivot] = 0;  // sign carried symbolically
      outcome = 0;
    } else if (outcome) {
      phase_[pivot] = 2;
    }
    mi.random = true;
    record_.push_back(static_cast<uint8_t>(outcome));
    info_.push_back(std::move(mi));
    return outcome;
  }
  // Deterministic outcome: accumulate stabilizer rows indexed by the
  // destabilizers that anticommute with p.
  row_clear(scratch);
  for (uint32_t i = 0; i < n_; ++i) {
    if (row_anticommutes(i, p)) rowsum(scratch, n_ + i);
  }
  // scratch == +/- p up to the tracked phase.
  uint8_t rel = static_cast<uint8_t>((phase_[scratch] + 4 - ((p.sign() == -1) ? 2 : 0)) & 3);
  assert(rel == 0 || rel == 2);
  int outcome = (rel == 2) ? 1 : 0;
  if (track_symbols_) {
    for (uint32_t s = 0; s < num_symbols_; ++s) {
      if ((sw(scratch)[s >> 6] >> (s & 63)) & 1) {
        mi.depends_on.push_back(symbol_measurement_[s]);
      }
    }
  }
  record_.push_back(static_cast<uint8_t>(outcome));
  info_.push_back(std::move(mi));
  return outcome;
}

int TableauSim::measure_z(uint32_t q) {
  PauliString p(n_);
  p.set_z(q, true);
  return measure_pauli(p);
}

void TableauSim::reset(uint32_t q) {
  int m = measure_z(q);
  bool was_random = info_.back().random;
  bool had_deps = !info_.back().depends_on.empty();
  // The reset outcome is not part of the measurement record.
  record_.pop_back();
  info_.pop_back();
  if (track_symbols_ && was_random) {
    // The discarded outcome is pinned to the reference branch; its fresh
    // symbol lives only in the new stabilizer row and can be retired.
    uint32_t s = --num_symbols_;
    for (uint32_t r = 0; r <= 2 * n_; ++r) {
      sw(r)[s >> 6] &= ~(1ull << (s & 63));
    }
    symbol_measurement_.pop_back();
  } else if (track_symbols_ && had_deps) {
    // Deterministic outcome with a symbolic sign: the conditional X that
    // pins the qubit to |0> must flip the sign of every row anticommuting
    // with X_q by the outcome's symbol set, which the scratch row still
    // holds from the measurement above.
    const uint32_t scratch = 2 * n_;
    const uint32_t w = q >> 6;
    const uint64_t mask = 1ull << (q & 63);
    for (uint32_t r = 0; r < 2 * n_; ++r) {
      if (zw(r)[w] & mask) {
        for (uint32_t sw_i = 0; sw_i < symwords_; ++sw_i) {
          sw(r)[sw_i] ^= sw(scratch)[sw_i];
        }
      }
    }
  }
  if (m == 1) x(q);
}

void TableauSim::apply(const CircuitInstruction& instr) {
  switch (instr.kind) {
    case InstrKind::H: h(instr.targets[0]); break;
    case InstrKind::CX: cx(instr.targets[0], instr.targets[1]); break;
    case InstrKind::X: x(instr.targets[0]); break;
    case InstrKind::Z: z(instr.targets[0]); break;
    case InstrKind::Reset: reset(instr.targets[0]); break;
    case InstrKind::MeasureZ: measure_z(instr.targets[0]); break;
    case InstrKind::MeasureXX: {
      PauliString p(n_);
      p.set_x(instr.targets[0], true);
      p.set_x(instr.targets[1], true);
      measure_pauli(p);
      break;
    }
    case InstrKind::MeasureZZ: {
      PauliString p(n_);
      p.set_z(instr.targets[0], true);
      p.set_z(instr.targets[1], true);
      measure_pauli(p);
      break;
    }
    case InstrKind::PauliError: {
      PauliString p(n_);
      for (size_t i = 0; i < instr.targets.size(); ++i) {
        p.set_pauli(instr.targets[i], instr.paulis[i]);
      }
      apply_pauli(p);
      break;
    }
    case InstrKind::Idle: break;
  }
}

std::optional<int> TableauSim::peek_sign(const PauliString& p) {
  for (uint32_t r = n_; r < 2 * n_; ++r) {
    if (row_anticommutes(r, p)) return std::nullopt;
  }
  const uint32_t scratch = 2 * n_;
  row_clear(scratch);
  for (uint32_t i = 0; i < n_; ++i) {
    if (row_anticommutes(i, p)) rowsum(scratch, n_ + i);
  }
  uint8_t rel = static_cast<uint8_t>((phase_[scratch] + 4 - ((p.sign() == -1) ? 2 : 0)) & 3);
  if (rel != 0 && rel != 2) return std::nullopt;
  return (rel == 2) ? -1 : +1;
}

std::optional<std::vector<uint32_t>> TableauSim::peek_dependencies(
    const PauliString& p) {
  if (!track_symbols_) return std::nullopt;
  for (uint32_t r = n_; r < 2 * n_; ++r) {
    if (row_anticommutes(r, p)) return std::nullopt;
  }
  const uint32_t scratch = 2 * n_;
  row_clear(scratch);
  for (uint32_t i = 0; i < n_; ++i) {
    if (row_anticommutes(i, p)) rowsum(scratch, n_ + i);
  }
  std::vector<uint32_t> deps;
  for (uint32_t s = 0; s < num_symbols_; ++s) {
    if ((sw(scratch)[s >> 6] >> (s & 63)) & 1) {
      deps.push_back(symbol_measurement_[s]);
    }
  }
  return deps;
}

bool TableauSim::check_invariants() const {
  // Pairwise commutation of stabilizer rows.
  for (uint32_t a = n_; a < 2 * n_; ++a) {
    for (uint32_t b = a + 1; b < 2 * n_; ++b) {
      uint64_t acc = 0;
      for (uint32_t w = 0; w < words_; ++w) {
        acc ^= (xw(a)[w] & zw(b)[w]) ^ (zw(a)[w] & xw(b)[w]);
      }
      if (std::popcount(acc) & 1) return false;
    }
  }
  // Destabilizer i anticommutes with stabilizer i and commutes with others.
  for (uint32_t i = 0; i < n_; ++i) {
    for (uint32_t j = 0; j < n_; ++j) {
      uint64_t acc = 0;
      for (uint32_t w = 0; w < words_; ++w) {
        acc ^= (xw(i)[w] & zw(n_ + j)[w]) ^ (zw(i)[w] & xw(n_ + j)[w]);
      }
      bool anti = std::popcount(acc) & 1;
      if (anti != (i == j)) return false;
    }
  }
  return true;
}

PauliString TableauSim::stabilizer(uint32_t index) const {
  PauliString p(n_);
  for (uint32_t q = 0; q < n_; ++q) {
    if ((xw(index)[q >> 6] >> (q & 63)) & 1) p.set_x(q, true);
    if ((zw(index)[q >> 6] >> (q & 63)) & 1) p.set_z(q, true);
  }
  if (phase_[index] == 2) p.set_sign(-1);
  return p;
}

}  // namespace heraldsim
