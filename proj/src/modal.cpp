#include "trimodal/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "trimodal/errors.hpp"

namespace trimodal {

namespace {

// Index helpers on the reduced triple r with its provenance permutation.
struct Labeled {
  std::array<int, 3> value;
  std::array<int, 3> perm;

  void order(int i0, int i1, int i2) {
    value = {value[static_cast<size_t>(i0)], value[static_cast<size_t>(i1)],
             value[static_cast<size_t>(i2)]};
    perm = {perm[static_cast<size_t>(i0)], perm[static_cast<size_t>(i1)],
            perm[static_cast<size_t>(i2)]};
  }

  void sort_ascending() {
    if (value[0] > value[1]) order(1, 0, 2);
    if (value[1] > value[2]) order(0, 2, 1);
    if (value[0] > value[1]) order(1, 0, 2);
  }
};

bool divides(int a, int b) { return b % a == 0; }

}  // namespace

ModalClass classify(std::array<int, 3> m) {
  for (int v : m)
    if (v <= 0)
      throw DegenerateTriple("classify: mode entries must be positive");
  if (m[0] == m[1] || m[0] == m[2] || m[1] == m[2])
    throw DegenerateTriple("classify: mode entries must be distinct");

  const int g = std::gcd(std::gcd(m[0], m[1]), m[2]);
  Labeled r{{m[0] / g, m[1] / g, m[2] / g}, {0, 1, 2}};

  const std::array<int, 3> pair_gcd = {std::gcd(r.value[1], r.value[2]),
                                       std::gcd(r.value[0], r.value[2]),
                                       std::gcd(r.value[0], r.value[1])};
  // pair_gcd[i] pairs the two entries other than i.
  int shared_pairs = 0;
  for (int pg : pair_gcd) shared_pairs += pg > 1 ? 1 : 0;

  ModalClass out;
  out.divisor = g;

  switch (shared_pairs) {
    case 3: {
      out.tag = ModalCase::I;
      r.sort_ascending();
      break;
    }
    case 2: {
      // The hub entry belongs to both sharing pairs: it is the unique i with
      // pair_gcd[i] == 1 (the pair it does not belong to is the coprime one).
      int hub = 0;
      for (int i = 0; i < 3; ++i)
        if (pair_gcd[static_cast<size_t>(i)] == 1) hub = i;
      r.order((hub + 1) % 3, (hub + 2) % 3, hub);  // spokes first, hub last
      if (r.value[0] > r.value[1]) r.order(1, 0, 2);
      const bool d0 = divides(r.value[0], r.value[2]);
      const bool d1 = divides(r.value[1], r.value[2]);
      if (d0 && d1) {
        out.tag = ModalCase::IIa;
      } else if (d0 || d1) {
        out.tag = ModalCase::IIb;
        if (d1) r.order(1, 0, 2);  // the divider of the hub is labeled first
      } else {
        out.tag = ModalCase::IIc;
      }
      break;
    }
    case 1: {
      // Exactly one sharing pair; the entry outside it is coprime to both.
      int lone = 0;
      for (int i = 0; i < 3; ++i)
        if (pair_gcd[static_cast<size_t>(i)] > 1) lone = i;
      r.order(lone, (lone + 1) % 3, (lone + 2) % 3);
      if (divides(r.value[2], r.value[1])) {
        r.order(0, 2, 1);  // orient the pair so a divisor sits in slot 1
      } else if (!divides(r.value[1], r.value[2]) && r.value[1] > r.value[2]) {
        r.order(0, 2, 1);
      }
      const bool chain = divides(r.value[1], r.value[2]);
      if (r.value[0] == 1)
        out.tag = chain ? ModalCase::IIIa : ModalCase::IIIb;
      else
        out.tag = chain ? ModalCase::IIIc : ModalCase::IIId;
      break;
    }
    default: {
      r.sort_ascending();
      out.tag = r.value[0] == 1 ? ModalCase::IVa : ModalCase::IVb;
      break;
    }
  }

  out.reduced = r.value;
  out.perm = r.perm;
  return out;
}

bool region_contains(const RegionPredicate& r, const std::array<double, 3>& t) {
  const double a1 = std::abs(t[0]);
  const double a2 = std::abs(t[1]);
  const double a3 = std::abs(t[2]);
  if (a1 == 0.0 && a2 == 0.0 && a3 == 0.0) return false;
  const double d = r.delta;
  switch (r.tag) {
    case ModalCase::I:
      return true;
    case ModalCase::IIa:
      return a3 >= d * std::sqrt(a1 * a1 + a2 * a2 + a3 * a3);
    case ModalCase::IIb:
      return a3 >= d * a1;
    case ModalCase::IIc:
      return a3 >= d * std::min(a1, a2);
    case ModalCase::IIIa:
      return a3 >= d * a2 && a2 >= d * a1;
    case ModalCase::IIIb:
      return std::min(a2, a3) >= d * a1;
    case ModalCase::IIIc:
      return a3 >= d * a2 && a2 >= d * std::min(a1, a3);
    case ModalCase::IIId:
      return std::min(a2, a3) >= d * std::min(a1, std::max(a2, a3));
    case ModalCase::IVa:
      return std::min(a2, a3) >= d * a1 && a1 >= d * std::min(a2, a3);
    case ModalCase::IVb:
    default: {
      // Smallest magnitude must not fall more than a factor delta below the
      // middle one; keeps the axes but excludes the coordinate planes.
      std::array<double, 3> s = {a1, a2, a3};
      std::sort(s.begin(), s.end());
      return s[0] >= d * s[1];
    }
  }
}

PeriodInfo reduced_period_check(const std::array<int, 3>& m,
                                const std::array<bool, 3>& active) {
  int g = 0;
  for (int i = 0; i < 3; ++i) {
    if (!active[static_cast<size_t>(i)]) continue;
    const int v = m[static_cast<size_t>(i)];
    if (v <= 0)
      throw DegenerateTriple("reduced_period_check: active entries must be positive");
    g = std::gcd(g, v);
  }
  if (g == 0)
    throw DegenerateTriple("reduced_period_check: no active modes");
  return PeriodInfo{g, 2.0 * std::numbers::pi / static_cast<double>(g)};
}

const char* case_name(ModalCase c) {
  switch (c) {
    case ModalCase::I: return "I";
    case ModalCase::IIa: return "IIa";
    case ModalCase::IIb: return "IIb";
    case ModalCase::IIc: return "IIc";
    case ModalCase::IIIa: return "IIIa";
    case ModalCase::IIIb: return "IIIb";
    case ModalCase::IIIc: return "IIIc";
    case ModalCase::IIId: return "IIId";
    case ModalCase::IVa: return "IVa";
    case ModalCase::IVb: return "IVb";
  }
  return "?";
}

const char* region_formula(ModalCase c) {
  switch (c) {
    case ModalCase::I: return "t != 0";
    case ModalCase::IIa: return "|t3| >= delta*|t|";
    case ModalCase::IIb: return "|t3| >= delta*|t1|";
    case ModalCase::IIc: return "|t3| >= delta*min(|t1|,|t2|)";
    case ModalCase::IIIa: return "|t3| >= delta*|t2| and |t2| >= delta*|t1|";
    case ModalCase::IIIb: return "min(|t2|,|t3|) >= delta*|t1|";
    case ModalCase::IIIc:
      return "|t3| >= delta*|t2| and |t2| >= delta*min(|t1|,|t3|)";
    case ModalCase::IIId:
      return "min(|t2|,|t3|) >= delta*min(|t1|,max(|t2|,|t3|))";
    case ModalCase::IVa:
      return "min(|t2|,|t3|) >= delta*|t1| and |t1| >= delta*min(|t2|,|t3|)";
    case ModalCase::IVb: return "sorted |t|: s0 >= delta*s1";
  }
  return "?";
}

}  // namespace trimodal
