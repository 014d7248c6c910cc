#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace heraldsim {

// n-qubit Pauli operator in symplectic form: per-qubit X and Z bits plus a
// global sign.  Y is X&Z with the phase convention Y = iXZ, tracked so that
// products of Hermitian Paulis stay Hermitian.
class PauliString {
 public:
  PauliString() : n_(0) {}
  explicit PauliString(uint32_t n);

  // Parse e.g. "+X0*Z3*Y5" or a dense letter string "XIZY".
  static PauliString from_dense(const std::string& letters, bool negative = false);

  uint32_t num_qubits() const { return n_; }

  bool x(uint32_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
  bool z(uint32_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
  void set_x(uint32_t q, bool v);
  void set_z(uint32_t q, bool v);

  // 'I', 'X', 'Y' or 'Z'
  char pauli_at(uint32_t q) const;
  void set_pauli(uint32_t q, char p);

  // +1 or -1.
  int sign() const { return (phase2_ & 2) ? -1 : 1; }
  void set_sign(int s);

  bool is_identity() const;
  uint32_t weight() const;

  bool commutes_with(const PauliString& other) const;

  // In-place product (phase-tracked).  Requires equal qubit counts.
  PauliString& operator*=(const PauliString& other);

  bool operator==(const PauliString& other) const;

  std::string str() const;

  const std::vector<uint64_t>& x_words() const { return xs_; }
  const std::vector<uint64_t>& z_words() const { return zs_; }

 private:
  uint32_t n_;
  std::vector<uint64_t> xs_;
  std::vector<uint64_t> zs_;
  uint8_t phase2_ = 0;  // exponent of i, mod 4; kept even for Hermitian strings
};

}  // namespace heraldsim
