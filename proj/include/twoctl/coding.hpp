#pragma once

#include <string>
#include <variant>

#include "twoctl/rational.hpp"

namespace twoctl {

struct NoCoding {
  bool operator==(const NoCoding&) const = default;
};

/// Independent scalar gains on the forward (alpha) and feedback (beta)
/// channels, each undone on the receiving side.
struct OneWay {
  double alpha = 1.0;
  double beta = 1.0;
  bool operator==(const OneWay&) const = default;
};

/// Static two-way coding [q; y] = M [u; v] with M = [a b; c d] at the
/// controller side and M^-1 at the plant side. Requires ad != 0 and
/// ad - bc != 0 (finite).
struct TwoWay {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;
  double det() const { return a * d - b * c; }
  bool operator==(const TwoWay&) const = default;
};

using CodingScheme = std::variant<NoCoding, OneWay, TwoWay>;

/// Entries of M^-1 = [a_bar b_bar; c_bar d_bar].
struct CodingInverse {
  double a_bar = 1.0;
  double b_bar = 0.0;
  double c_bar = 0.0;
  double d_bar = 1.0;
  bool operator==(const CodingInverse&) const = default;
};

/// Throws DomainError naming the violated condition.
void validate(const CodingScheme& coding);
bool is_valid(const CodingScheme& coding);

CodingInverse coding_inverse(const TwoWay& m);

std::string coding_name(const CodingScheme& coding);

/// Plant P, controller K and the coding scheme between them.
struct LoopModel {
  RationalFunction plant;
  RationalFunction controller;
  CodingScheme coding;
  bool operator==(const LoopModel&) const = default;
};

/// Throws DomainError if P or K is improper or the coding is invalid.
void validate(const LoopModel& model);

}  // namespace twoctl
