#pragma once

#include <array>
#include <string>

namespace trimodal {

// Arithmetic type of a mode triple after gcd reduction, determined by which
// pairs share a common factor. Within II/III/IV the subcases refine by
// divisibility among the entries; the subcase decides which quadratic
// interactions can feed a given kernel direction at second order, hence the
// shape of the admissible amplitude region below.
enum class ModalCase { I, IIa, IIb, IIc, IIIa, IIIb, IIIc, IIId, IVa, IVb };

struct ModalClass {
  ModalCase tag = ModalCase::I;
  // Input triple divided by its gcd and relabeled into the case's canonical
  // order (case II: hub last is not required, see classify for conventions).
  std::array<int, 3> reduced{};
  int divisor = 1;  // gcd of the input triple
  // reduced[i] == input[perm[i]] / divisor.
  std::array<int, 3> perm{};
};

// Classifies a positive triple. Throws DegenerateTriple when entries are
// non-positive or coincide after gcd reduction. Invariant under permutations
// and under scaling by a common factor (up to the recorded perm/divisor).
ModalClass classify(std::array<int, 3> m);

struct RegionPredicate {
  ModalCase tag = ModalCase::I;
  double delta = 0.05;  // aperture parameter in (0, 1)
};

// Whether an amplitude triple lies in the admissible cone for the case. The
// components of t are interpreted in the same order as ModalClass::reduced.
// t = 0 is never admissible. Shrinking delta enlarges the region; the
// predicate is invariant under t -> c*t, c > 0.
bool region_contains(const RegionPredicate& r, const std::array<double, 3>& t);

struct PeriodInfo {
  int gcd = 1;        // gcd of the active entries
  double period = 0;  // 2*pi / gcd
};

// Minimal common period of the modes flagged active. Throws
// DegenerateTriple when no entry is active.
PeriodInfo reduced_period_check(const std::array<int, 3>& m,
                                const std::array<bool, 3>& active);

const char* case_name(ModalCase c);

// Human-readable inequality defining the admissible region of a case.
const char* region_formula(ModalCase c);

}  // namespace trimodal
