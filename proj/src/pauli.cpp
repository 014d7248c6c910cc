#include "heraldsim/pauli.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace heraldsim {

namespace {
inline size_t words_for(uint32_t n) { return (n + 63) / 64; }
}  // namespace

PauliString::PauliString(uint32_t n)
    : n_(n), xs_(words_for(n), 0), zs_(words_for(n), 0) {}

PauliString PauliString::from_dense(const std::string& letters, bool negative) {
  PauliString p(static_cast<uint32_t>(letters.size()));
  for (uint32_t q = 0; q < letters.size(); ++q) {
    p.set_pauli(q, static_cast<char>(std::toupper(letters[q])));
  }
  if (negative) p.set_sign(-1);
  return p;
}

void PauliString::set_x(uint32_t q, bool v) {
  uint64_t m = 1ull << (q & 63);
  if (v) xs_[q >> 6] |= m; else xs_[q >> 6] &= ~m;
}

void PauliString::set_z(uint32_t q, bool v) {
  uint64_t m = 1ull << (q & 63);
  if (v) zs_[q >> 6] |= m; else zs_[q >> 6] &= ~m;
}

char PauliString::pauli_at(uint32_t q) const {
  bool xb = x(q), zb = z(q);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void PauliString::set_pauli(uint32_t q, char p) {
  switch (p) {
    case 'I': set_x(q, false); set_z(q, false); break;
    case 'X': set_x(q, true); set_z(q, false); break;
    case 'Y': set_x(q, true); set_z(q, true); break;
    case 'Z': set_x(q, false); set_z(q, true); break;
    default: throw std::invalid_argument("bad pauli letter");
  }
}

void PauliString::set_sign(int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("sign must be +1 or -1");
  phase2_ = (s == -1) ? 2 : 0;
}

bool PauliString::is_identity() const {
  for (size_t w = 0; w < xs_.size(); ++w) {
    if (xs_[w] || zs_[w]) return false;
  }
  return phase2_ == 0;
}

uint32_t PauliString::weight() const {
  uint32_t w = 0;
  for (size_t i = 0; i < xs_.size(); ++i) {
    w += static_cast<uint32_t>(std::popcount(xs_[i] | zs_[i]));
  }
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  uint64_t acc = 0;
  for (size_t w = 0; w < xs_.size(); ++w) {
    acc ^= (xs_[w] & other.zs_[w]) ^ (zs_[w] & other.xs_[w]);
  }
  return (std::popcount(acc) & 1) == 0;
}

PauliString& PauliString::operator*=(const PauliString& other) {
  if (other.n_ != n_) throw std::invalid_argument("qubit count mismatch");
  // Phase of the product in the Y = iXZ convention: write each factor as
  // i^(x&z) X^x Z^z and count anticommutations when commuting Z^z1 past X^x2.
  uint32_t i_exp = phase2_ + other.phase2_;
  uint32_t minus = 0;  // each contributes i^2
  uint32_t ycount = 0;
  for (size_t w = 0; w < xs_.size(); ++w) {
    minus += static_cast<uint32_t>(std::popcount(zs_[w] & other.xs_[w]));
    ycount += static_cast<uint32_t>(std::popcount(xs_[w] & zs_[w]));
    ycount += static_cast<uint32_t>(std::popcount(other.xs_[w] & other.zs_[w]));
    xs_[w] ^= other.xs_[w];
    zs_[w] ^= other.zs_[w];
  }
  uint32_t ycount_after = 0;
  for (size_t w = 0; w < xs_.size(); ++w) {
    ycount_after += static_cast<uint32_t>(std::popcount(xs_[w] & zs_[w]));
  }
  // i^(y1) * i^(y2) * i^(2*minus) = i^(y_after) * result_phase
  i_exp += ycount + 2 * minus + (4 - (ycount_after & 3));
  phase2_ = static_cast<uint8_t>(i_exp & 3);
  return *this;
}

bool PauliString::operator==(const PauliString& other) const {
  return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_ &&
         phase2_ == other.phase2_;
}

std::string PauliString::str() const {
  std::string s = (sign() == -1) ? "-" : "+";
  for (uint32_t q = 0; q < n_; ++q) s.push_back(pauli_at(q));
  return s;
}

}  // namespace heraldsim
