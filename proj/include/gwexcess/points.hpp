#pragma once

// Brute-force point oracle: the isolated zeros of n quadrics in P^n off the
// plane Lambda = {x_3 = ... = x_n = 0}, their local indices, and the
// comparison of the summed indices with 2^{n-1} H - n(E).
//
// The base field must be a prime field F_p; a point of degree d lives in
// the field build_extension(p, d, 0).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gwexcess/excess.hpp"
#include "gwexcess/gw.hpp"
#include "gwexcess/poly.hpp"

namespace gwexcess {

// F_{p^d} with elements named by Field::from_index and all arithmetic by
// table lookup. Orders up to 2048.
class TableField {
 public:
  using E = std::uint16_t;
  static constexpr std::uint64_t max_order = 2048;

  explicit TableField(Field k);
  // Shared instance for build_extension(p, d, 0).
  static std::shared_ptr<const TableField> get(std::uint64_t p, unsigned d);

  const Field& field() const { return field_; }
  std::uint32_t size() const { return q_; }
  std::uint64_t characteristic() const { return p_; }

  E add(E a, E b) const { return add_[a * q_ + b]; }
  E sub(E a, E b) const { return add_[a * q_ + neg_[b]]; }
  E neg(E a) const { return neg_[a]; }
  E mul(E a, E b) const { return (a == 0 || b == 0) ? 0 : exp_[log_[a] + log_[b]]; }
  E inv(E a) const { return exp_[q_ - 1 - log_[a]]; }
  E frob(E a) const { return frob_[a]; }
  // Prime-field residue r < p as an element.
  E embed(std::uint64_t r) const { return static_cast<E>(r); }

  Elem elem(E a) const { return field_.from_index(a); }

 private:
  Field field_;
  std::uint64_t p_;
  std::uint32_t q_;
  std::vector<E> add_, neg_, exp_, log_, frob_;
};

struct ClosedPoint {
  unsigned degree;
  Field field;                         // F_{p^degree}
  std::vector<std::uint32_t> indices;  // coordinate element indices
  std::vector<Elem> coords;            // first nonzero coordinate is 1
  bool canonical;                      // least index vector in its Frobenius orbit

  std::string to_string() const;
};

struct Enumeration {
  std::vector<ClosedPoint> points;  // sorted by degree, then indices
  unsigned degrees_scanned;
  std::uint64_t evaluations;
  bool budget_exhausted;
};

// Scans P^n(F_{p^d}) for d = 1..max_degree chart by chart and keeps the zeros
// off Lambda of exact degree d, one per orbit. A degree whose full scan would
// push the evaluation count past `budget` is not started.
Enumeration enumerate_gamma(const std::vector<Poly>& quadrics, unsigned max_degree,
                            std::uint64_t budget);

struct LocalIndex {
  std::size_t chart;
  Elem jacobian;
  bool etale;
  std::optional<GWClass> index;  // <Jac> over the residue field when etale
};
// Chart l defaults to the least l with x_l != 0. In chart l the affine
// coordinates are u_j = x_j / x_l (j != l) and the dehomogenization is
// f(s u_0, u_1, ..., 1, ..., u_n) with s = (-1)^l.
LocalIndex local_index(const ClosedPoint& p, const std::vector<Poly>& quadrics,
                       std::optional<std::size_t> chart = std::nullopt);
// Every chart l with x_l != 0 gives the same transferred index.
bool chart_independent(const ClosedPoint& p, const std::vector<Poly>& quadrics);

enum class OracleStatus { verified, failed, incomplete };
std::string to_string(OracleStatus s);

struct FoundPoint {
  ClosedPoint point;
  LocalIndex index;
  std::optional<GWClass> transferred;
  bool chart_independent;
};

struct OracleVerdict {
  OracleStatus status;
  std::vector<FoundPoint> found_points;
  long long found_rank;
  long long expected_rank;  // 2^n - C(n,2) - n - 1
  GWClass lhs, rhs;
  Comparison comparison;
  Enumeration enumeration;  // points are moved into found_points
  std::string diagnosis;
};

long long expected_gamma_rank(unsigned n);

// Throws InvalidArgument when quadrics_to_M(quadrics) differs from the
// report's M.
OracleVerdict verify_theorem(const std::vector<Poly>& quadrics, const ExcessReport& report,
                             unsigned max_degree, std::uint64_t budget);

// Fiber screen. Writing a point off Lambda as (a, t) with t in P^{n-3}, the
// quadrics become the affine system A(t) a = -c(t) in a = (x0, x1, x2).
struct FiberScreen {
  bool finite;  // no consistent rank-deficient fiber
  bool pruned;  // the search stopped early: the target total is out of reach
  std::vector<std::uint64_t> counts;  // counts[e-1] = #zeros over F_{p^e}
  std::vector<long long> exact;       // exact[d-1] = #closed points of degree d
  long long degree_total;             // sum d * exact[d-1]
};
FiberScreen screen_fibers(const std::vector<Poly>& quadrics, unsigned max_degree);

struct SearchCandidate {
  std::uint64_t seed;
  bool admissible;
  std::optional<FiberScreen> screen;
  std::optional<OracleVerdict> verdict;
};

struct SearchOptions {
  std::uint64_t p;
  unsigned n = 5;
  unsigned max_degree;
  std::uint64_t first_seed = 0;
  std::uint64_t seed_budget;
  std::uint64_t evaluation_budget;
};

struct SearchResult {
  std::optional<std::uint64_t> found_seed;
  std::uint64_t seeds_tried;
  std::uint64_t inadmissible;
  std::uint64_t screened_out;
  std::vector<SearchCandidate> candidates;  // those that passed the screen
  bool exhausted;
};

// Seed s uses the first draw of random_admissible_quadrics(F_p, n, s): the
// search moves on to s + 1 instead of redrawing, so a hit replays with one
// attempt. Stops at the first verified instance. `on_candidate`, if given,
// sees every seed.
SearchResult random_search(const SearchOptions& opt,
                           const std::function<void(const SearchCandidate&)>& on_candidate = {});

}  // namespace gwexcess
