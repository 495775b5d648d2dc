// Copyright 2026 The qcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qcrit {

enum class Pauli : std::uint8_t { I, X, Y, Z };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// A real-weighted tensor product of single-qubit Pauli operators.
///
/// Qubit 0 is the leftmost tensor factor and maps to the most significant bit
/// of a computational-basis index, so `letters()[q]` acts on bit `n - 1 - q`.
/// Conventions: Z|0> = |0>, X|0> = |1>, Y = iXZ.
class PauliString {
 public:
  PauliString() = default;
  PauliString(std::vector<Pauli> letters, double coefficient = 1.0);

  /// Identity string on `qubit_count` qubits.
  static PauliString identity(int qubit_count, double coefficient = 1.0);
  /// Parses strings such as "XIZY"; underscores are read as identity.
  static PauliString parse(std::string_view text, double coefficient = 1.0);

  int qubit_count() const { return static_cast<int>(letters_.size()); }
  const std::vector<Pauli>& letters() const { return letters_; }
  Pauli operator[](int q) const { return letters_[static_cast<std::size_t>(q)]; }
  double coefficient() const { return coefficient_; }

  PauliString with_coefficient(double c) const { return {letters_, c}; }
  bool is_identity() const;

  /// Bits flipped by the string (X or Y letters).
  std::uint64_t x_mask() const;
  /// Bits that pick up a sign (Z or Y letters).
  std::uint64_t z_mask() const;
  int y_count() const;

  /// Phase w(b) such that P|b> = w(b) |b ^ x_mask()>, coefficient excluded.
  std::complex<double> phase(std::uint64_t basis_index) const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
  double coefficient_ = 1.0;
};

/// Whether the two strings commute as operators (coefficients ignored).
bool commutes(const PauliString& a, const PauliString& b);

}  // namespace qcrit
