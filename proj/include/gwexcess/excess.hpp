#pragma once

// Bilinear forms attached to n quadrics in P^n containing the plane
// Lambda = {x_3 = ... = x_n = 0}, and the GW-valued Euler number of the
// resulting excess bundle.
//
// Conventions: M is n x (n-2) with linear forms in x_0, x_1, x_2; its column
// v (0-based) is the coefficient of x_{v+3}. Row and column numbers in the
// comments below are 1-based, everything in code is 0-based.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gwexcess/gw.hpp"
#include "gwexcess/ideals.hpp"
#include "gwexcess/matrix.hpp"
#include "gwexcess/poly.hpp"

namespace gwexcess {

struct ExcessInput {
  Field field;
  unsigned n;
  PolyMatrix M;

  unsigned m() const { return (n - 1) / 2; }
};

// Checks shape, oddness of n >= 3 and that every entry is a linear form in
// three variables (or zero).
void validate(const ExcessInput& in);
// entries[i][v] = (c0, c1, c2) for the form c0 x0 + c1 x1 + c2 x2.
ExcessInput make_input(Field field, unsigned n,
                       const std::vector<std::vector<std::vector<long long>>>& entries);

// Q_1..Q_n in n+1 variables, all vanishing on Lambda.
PolyMatrix quadrics_to_M(const std::vector<Poly>& q);
// Q_i = sum_v M_iv x_{v+3}, lifted to n+1 variables.
std::vector<Poly> quadrics_from_M(const PolyMatrix& M);

struct PrincipalMinors {
  PolyMatrix N0, N1, N2;
  std::vector<Poly> f;  // f[i] = det N_i
};
// N_0 = rows 1..n-2, N_1 = rows 2..n-1, N_2 = rows 3..n.
PrincipalMinors principal_minors(const ExcessInput& in);

struct CoverCheck {
  bool ok;
  std::vector<std::size_t> vanished;  // indices i with f_i = 0
  std::string diagnosis;
};
CoverCheck cover_check(const std::vector<Poly>& f);

// The functional on R_{3(n-3)} that kills (f_0, f_1, f_2) and sends E to 1.
Vector trace_functional(const std::vector<Poly>& f, const Poly& e);
Elem apply_functional(const Vector& lambda, const Poly& g, unsigned degree);

// det M^v_{i,j,k}: M without rows i, j, k and column v (all 0-based here).
Poly excess_minor(const PolyMatrix& M, std::size_t i, std::size_t j, std::size_t k, std::size_t v);

// Ordered basis {x^alpha e_v}: v-major, then graded-lex in alpha of degree m-1.
struct DomainIndex {
  std::size_t v;
  Monomial alpha;
};
std::vector<DomainIndex> bprime_domain(const ExcessInput& in);

// B'(h_v, h'_l) = lambda((-1)^{v+l} h h' det M^v_{1,n-1,n} det M^l_{1,2,n}).
Matrix bprime(const ExcessInput& in, const Vector& lambda);
// n = 5 only: lambda(x x' F_i G_j) with F_i = (-1)^i det M^i_{1,4,5},
// G_j = (-1)^j det M^j_{1,2,5} and i, j in {3,4,5} naming the columns by the
// variable x_i they multiply.
Matrix bprime_n5(const ExcessInput& in, const Vector& lambda);

// Columns span the image of M^T : R_{m-2}^n -> R_{m-1}^{n-2} in the
// coordinates of bprime_domain.
Matrix transpose_image(const ExcessInput& in);

struct QuotientForm {
  Matrix B;
  std::vector<std::size_t> basis;  // coordinates of bprime_domain kept
};
// Restricts B' to the coordinates that are not pivots of the image of M^T.
// `order` lists the domain coordinates in the order the pivot search visits
// them (default: identity); the resulting basis is reported in that order.
// Throws InternalInconsistency if B' does not vanish on the image.
QuotientForm quotient_form(const Matrix& bprime_gram, const Matrix& image,
                           const std::optional<std::vector<std::size_t>>& order = std::nullopt);

long long expected_euler_rank(unsigned n);  // C(n,2) + n + 1
long long expected_b_rank(unsigned n);      // (n-2) C(m+1,2) - n C(m,2)
GWClass a1_euler_number(const GWClass& b, unsigned n);
GWClass theorem_rhs(const GWClass& euler, unsigned n);

struct ExcessOptions {
  std::optional<std::vector<std::size_t>> domain_order;
};

struct ExcessReport {
  ExcessInput input;
  std::vector<Poly> f;
  CoverCheck cover;
  std::vector<std::size_t> quotient_dims;  // degrees 0 .. 3(n-3)+1
  Poly E;
  bool jacobian_identity;  // Jac(f) - dim * E lies in the ideal
  Vector lambda;
  Matrix bprime_gram;
  Matrix B_gram;
  std::vector<std::size_t> quotient_basis;
  std::size_t image_dim;
  GWClass gw_B;
  std::size_t bprime_radical;
  GWClass gw_euler;
  long long expected_rank;
  GWClass rhs;
};

// Throws InadmissibleInput when the cover check fails.
ExcessReport run_excess(const ExcessInput& in, const ExcessOptions& opt = {});

// Uniform draws by rejection from mt19937_64: an integer in [0, q), and a
// field element via Field::from_index.
std::uint64_t random_index(std::uint64_t q, std::mt19937_64& rng);
Elem random_element(const Field& f, std::mt19937_64& rng);

// Raw coefficient indices of one random quadric system: linear[(i*(n-2)+v)*3+a]
// is the coefficient of x_a x_{v+3} in Q_i, then quadratic lists, quadric by
// quadric, the coefficients of x_j x_k for 3 <= j <= k <= n.
struct QuadricDraw {
  unsigned n;
  std::vector<std::uint64_t> linear;
  std::vector<std::uint64_t> quadratic;
};
QuadricDraw draw_quadric_indices(std::uint64_t q, unsigned n, std::mt19937_64& rng);
std::vector<Poly> quadrics_from_draw(const Field& f, const QuadricDraw& d);

struct RandomInput {
  ExcessInput input;
  std::size_t attempts;
};
// Redraws M with uniformly random linear entries until the cover check
// passes. Throws BudgetExhausted after max_attempts draws.
RandomInput random_admissible_input(const Field& f, unsigned n, std::uint64_t seed,
                                    std::size_t max_attempts = 1000);

struct RandomQuadrics {
  std::vector<Poly> quadrics;  // in n+1 variables
  std::size_t attempts;
};
// Q_i = sum_j M_ij x_j + sum_{3<=j<=k} c_ijk x_j x_k with M, c uniform; the
// same admissibility rule as random_admissible_input applies to M.
RandomQuadrics random_admissible_quadrics(const Field& f, unsigned n, std::uint64_t seed,
                                          std::size_t max_attempts = 1000);
// The raw draw for one attempt, admissible or not.
std::vector<Poly> draw_quadrics(const Field& f, unsigned n, std::mt19937_64& rng);

}  // namespace gwexcess
