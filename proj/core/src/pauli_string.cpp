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

#include "qcrit/pauli_string.hpp"

#include <bit>
#include <stdexcept>

namespace qcrit {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'I';
    case Pauli::X:
      return 'X';
    case Pauli::Y:
      return 'Y';
    case Pauli::Z:
      return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
    case '_':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
  }
}

PauliString::PauliString(std::vector<Pauli> letters, double coefficient)
    : letters_(std::move(letters)), coefficient_(coefficient) {
  if (letters_.empty()) {
    throw std::invalid_argument("PauliString needs at least one qubit");
  }
}

PauliString PauliString::identity(int qubit_count, double coefficient) {
  if (qubit_count < 1) {
    throw std::invalid_argument("PauliString needs at least one qubit");
  }
  return {std::vector<Pauli>(static_cast<std::size_t>(qubit_count), Pauli::I), coefficient};
}

PauliString PauliString::parse(std::string_view text, double coefficient) {
  std::vector<Pauli> letters;
  letters.reserve(text.size());
  for (char c : text) {
    letters.push_back(pauli_from_char(c));
  }
  return {std::move(letters), coefficient};
}

bool PauliString::is_identity() const {
  for (Pauli p : letters_) {
    if (p != Pauli::I) return false;
  }
  return true;
}

std::uint64_t PauliString::x_mask() const {
  if (letters_.size() > 63) {
    throw std::length_error("PauliString bit masks support at most 63 qubits");
  }
  std::uint64_t mask = 0;
  const int n = qubit_count();
  for (int q = 0; q < n; ++q) {
    Pauli p = letters_[static_cast<std::size_t>(q)];
    if (p == Pauli::X || p == Pauli::Y) mask |= std::uint64_t{1} << (n - 1 - q);
  }
  return mask;
}

std::uint64_t PauliString::z_mask() const {
  if (letters_.size() > 63) {
    throw std::length_error("PauliString bit masks support at most 63 qubits");
  }
  std::uint64_t mask = 0;
  const int n = qubit_count();
  for (int q = 0; q < n; ++q) {
    Pauli p = letters_[static_cast<std::size_t>(q)];
    if (p == Pauli::Z || p == Pauli::Y) mask |= std::uint64_t{1} << (n - 1 - q);
  }
  return mask;
}

int PauliString::y_count() const {
  int count = 0;
  for (Pauli p : letters_) count += p == Pauli::Y;
  return count;
}

std::complex<double> PauliString::phase(std::uint64_t basis_index) const {
  // Y = iXZ on every Y site, so P = i^{#Y} X^{x} Z^{z}.
  static constexpr std::complex<double> kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::complex<double> w = kIPowers[y_count() & 3];
  if (std::popcount(basis_index & z_mask()) & 1) w = -w;
  return w;
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Pauli p : letters_) out.push_back(to_char(p));
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.qubit_count() != b.qubit_count()) {
    throw std::invalid_argument("commutes: qubit counts differ");
  }
  int anticommuting = 0;
  for (int q = 0; q < a.qubit_count(); ++q) {
    Pauli pa = a[q];
    Pauli pb = b[q];
    if (pa != Pauli::I && pb != Pauli::I && pa != pb) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

}  // namespace qcrit
