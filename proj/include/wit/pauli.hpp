// Copyright 2026 The witlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wit {

/// Single-site Pauli letter.
enum class PauliLetter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(PauliLetter l) { return "IXYZ"[static_cast<int>(l)]; }

inline PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
    default: throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
  }
}

/// Signed Pauli word. The phase is i^k with k in {0,1,2,3}, so the phase
/// group {+1, +i, -1, -i} is closed under multiplication.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(size_t n) : letters_(n, PauliLetter::I) {}

  PauliString(std::vector<PauliLetter> letters, int phase_power = 0)
      : letters_(std::move(letters)), phase_power_(((phase_power % 4) + 4) % 4) {}

  /// Parses strings like "XIZ", "-ZYIIII", "+iXY", "-iZZ".
  static PauliString parse(const std::string& s) {
    size_t pos = 0;
    int k = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') k = 2;
      ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
      k += 1;
      ++pos;
    }
    std::vector<PauliLetter> letters;
    for (; pos < s.size(); ++pos) letters.push_back(letter_from_char(s[pos]));
    return PauliString(std::move(letters), k);
  }

  static PauliString single(size_t n, size_t site, PauliLetter l, int phase_power = 0) {
    PauliString p(n);
    p.set(site, l);
    p.phase_power_ = ((phase_power % 4) + 4) % 4;
    return p;
  }

  size_t size() const { return letters_.size(); }
  PauliLetter at(size_t i) const { return letters_.at(i); }
  void set(size_t i, PauliLetter l) { letters_.at(i) = l; }
  const std::vector<PauliLetter>& letters() const { return letters_; }

  /// Phase exponent k for phase i^k.
  int phase_power() const { return phase_power_; }
  void mul_phase_power(int k) { phase_power_ = ((phase_power_ + k) % 4 + 4) % 4; }

  std::complex<double> phase() const {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_power_];
  }

  bool is_hermitian() const { return phase_power_ % 2 == 0; }

  bool is_identity_word() const {
    for (auto l : letters_)
      if (l != PauliLetter::I) return false;
    return true;
  }

  /// Count of non-identity letters.
  size_t weight() const {
    size_t w = 0;
    for (auto l : letters_)
      if (l != PauliLetter::I) ++w;
    return w;
  }

  friend PauliString operator*(const PauliString& a, const PauliString& b) {
    if (a.size() != b.size())
      throw std::invalid_argument("PauliString length mismatch in product");
    PauliString r(a.size());
    r.phase_power_ = (a.phase_power_ + b.phase_power_) % 4;
    for (size_t i = 0; i < a.size(); ++i) {
      auto [l, k] = mul_letters(a.letters_[i], b.letters_[i]);
      r.letters_[i] = l;
      r.mul_phase_power(k);
    }
    return r;
  }

  bool operator==(const PauliString& o) const {
    return phase_power_ == o.phase_power_ && letters_ == o.letters_;
  }
  bool operator!=(const PauliString& o) const { return !(*this == o); }

  /// Renders like the operator-growth tables: sign prefix (nothing for +1,
  /// "-" for -1, "i"/"-i" for imaginary phases), then uppercase letters.
  /// Words shorter than min_width are padded with 'I' on the right.
  std::string str(size_t min_width = 0) const {
    static const char* signs[4] = {"", "i", "-", "-i"};
    std::string s = signs[phase_power_];
    for (auto l : letters_) s += to_char(l);
    for (size_t i = letters_.size(); i < min_width; ++i) s += 'I';
    return s;
  }

 private:
  // (a*b) letterwise: returns resulting letter and phase exponent of i.
  static std::pair<PauliLetter, int> mul_letters(PauliLetter a, PauliLetter b) {
    if (a == PauliLetter::I) return {b, 0};
    if (b == PauliLetter::I) return {a, 0};
    if (a == b) return {PauliLetter::I, 0};
    int ia = static_cast<int>(a), ib = static_cast<int>(b);
    // XY=iZ, YZ=iX, ZX=iY; reversed order picks up -i.
    PauliLetter c = static_cast<PauliLetter>(6 - ia - ib);
    bool forward = (ib - ia + 3) % 3 == 1;
    return {c, forward ? 1 : 3};
  }

  std::vector<PauliLetter> letters_;
  int phase_power_ = 0;
};

inline size_t weight(const PauliString& p) { return p.weight(); }

inline PauliString pauli_mul(const PauliString& a, const PauliString& b) { return a * b; }

}  // namespace wit
