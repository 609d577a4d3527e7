#pragma once

/// @file mk.hpp
/// @brief Exact quadratic forms for I_k and sum_m J_k^(m) on the symmetric
/// basis (1 - P1)^a P2^b, and certified lower bounds for M_k.
///
/// Matrix entries are computed from partition data, so k = 105 costs the same
/// as k = 5. The eigenproblem is solved in 100-digit floating point and the
/// Rayleigh quotient of the returned vector is re-evaluated exactly.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "sievelab/error.hpp"
#include "sievelab/parallel.hpp"

namespace sievelab {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using HighFloat = boost::multiprecision::number<boost::multiprecision::gmp_float<100>,
                                                boost::multiprecision::et_off>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Dirichlet integral over R_k of prod x_i^{a_i} * (1 - sum x_i)^c.
inline Rational monomial_simplex_integral(unsigned k, const std::vector<unsigned>& exponents, unsigned c) {
    require(exponents.size() == k, "exponent vector length must equal k");
    BigInt num = factorial(c);
    unsigned total = k + c;
    for (unsigned a : exponents) {
        num *= factorial(a);
        total += a;
    }
    return Rational(num, factorial(total));
}

struct BasisElement {
    unsigned a = 0;  ///< power of (1 - P1)
    unsigned b = 0;  ///< power of P2
    unsigned degree() const { return a + 2 * b; }
    auto operator<=>(const BasisElement&) const = default;
};

/// Generators (1 - P1)^a P2^b with a + 2b <= degree_bound, ordered by
/// (a + 2b, b) so that a smaller degree bound gives a prefix of the list.
struct SymmetricBasis {
    unsigned k = 1;
    unsigned degree_bound = 0;
    std::vector<BasisElement> generators;

    static SymmetricBasis standard(unsigned k, unsigned degree_bound) {
        require(k >= 1, "k must be at least 1");
        SymmetricBasis basis{k, degree_bound, {}};
        for (unsigned deg = 0; deg <= degree_bound; ++deg)
            for (unsigned b = 0; 2 * b <= deg; ++b) basis.generators.push_back({deg - 2 * b, b});
        return basis;
    }

    void validate() const {
        require(k >= 1, "k must be at least 1");
        std::vector<BasisElement> sorted = generators;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "basis generators must be distinct");
        for (const auto& g : generators)
            require(g.degree() <= degree_bound, "basis generator exceeds the degree bound");
    }

    std::size_t size() const { return generators.size(); }
};

namespace detail {

inline void partitions_into(unsigned n, unsigned max_part, std::vector<unsigned>& current,
                            std::vector<std::vector<unsigned>>& out) {
    if (n == 0) {
        out.push_back(current);
        return;
    }
    for (unsigned p = std::min(n, max_part); p >= 1; --p) {
        current.push_back(p);
        partitions_into(n - p, p, current, out);
        current.pop_back();
    }
}

}  // namespace detail

/// Cached values of T(k, a, b) = integral over R_k of (1 - P1)^a P2^b.
///
/// Expanding P2^b multinomially and applying the Dirichlet integral,
///   T = a! b! / (k + a + 2b)! * sum over partitions lambda of b with at most
///       k parts of [k! / ((k - l)! prod m_j!)] * prod (2 lambda_i)! / lambda_i!
/// where l is the number of parts and m_j the part multiplicities.
/// For k = 0 the "simplex" is a point: T = 1 if b = 0, else 0.
class SimplexMomentTable {
public:
    const Rational& get(unsigned k, unsigned a, unsigned b) {
        const auto key = std::make_tuple(k, a, b);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        if (k == 0) return cache_.emplace(key, Rational(b == 0 ? 1 : 0)).first->second;
        auto sit = sums_.find({k, b});
        if (sit == sums_.end()) sit = sums_.emplace(std::make_pair(k, b), partition_sum(k, b)).first;
        return cache_.emplace(key, Rational(factorial(a) * factorial(b) * sit->second, factorial(k + a + 2 * b)))
            .first->second;
    }

    static Rational compute(unsigned k, unsigned a, unsigned b) {
        if (k == 0) return b == 0 ? Rational(1) : Rational(0);
        return Rational(factorial(a) * factorial(b) * partition_sum(k, b), factorial(k + a + 2 * b));
    }

    static BigInt partition_sum(unsigned k, unsigned b) {
        std::vector<std::vector<unsigned>> parts;
        std::vector<unsigned> current;
        detail::partitions_into(b, b, current, parts);
        BigInt sum = 0;
        for (const auto& lambda : parts) {
            if (lambda.size() > k) continue;
            BigInt term = factorial(k) / factorial(k - static_cast<unsigned>(lambda.size()));
            std::map<unsigned, unsigned> mult;
            for (unsigned p : lambda) {
                ++mult[p];
                term *= factorial(2 * p);
                term /= factorial(p);
            }
            for (const auto& [p, m] : mult) term /= factorial(m);
            sum += term;
        }
        return sum;
    }

private:
    std::map<std::tuple<unsigned, unsigned, unsigned>, Rational> cache_;
    std::map<std::pair<unsigned, unsigned>, BigInt> sums_;
};

struct QuadraticFormPair {
    SymmetricBasis basis;
    Matrix<Rational> M1;  ///< I_k pairing
    Matrix<Rational> M2;  ///< sum over m of the J_k^(m) pairing
};

/// Coefficients c_j of the inner integral over x_m of (1 - s - x)^a (Q + x^2)^b
/// on [0, 1 - s]:  sum_j c_j (1 - s)^{a + 2j + 1} Q^{b - j}.
inline std::vector<Rational> inner_integral_coefficients(const BasisElement& g) {
    std::vector<Rational> c;
    for (unsigned j = 0; j <= g.b; ++j) {
        const BigInt binom = factorial(g.b) / (factorial(j) * factorial(g.b - j));
        c.emplace_back(binom * factorial(g.a) * factorial(2 * j), factorial(g.a + 2 * j + 1));
    }
    return c;
}

inline QuadraticFormPair build_forms(const SymmetricBasis& basis, unsigned threads = 1) {
    basis.validate();
    const std::size_t n = basis.size();
    const unsigned k = basis.k;
    const auto& gens = basis.generators;

    // Fill the moment cache up front so the parallel phase is read-only.
    SimplexMomentTable table;
    unsigned max_a = 0, max_b = 0;
    for (const auto& g : gens) {
        max_a = std::max(max_a, g.a);
        max_b = std::max(max_b, g.b);
    }
    std::map<std::tuple<unsigned, unsigned, unsigned>, Rational> moments;
    for (unsigned a = 0; a <= 2 * max_a + 4 * max_b + 2; ++a)
        for (unsigned b = 0; b <= 2 * max_b; ++b) {
            moments.emplace(std::make_tuple(k, a, b), table.get(k, a, b));
            moments.emplace(std::make_tuple(k - 1, a, b), table.get(k - 1, a, b));
        }
    auto T = [&](unsigned kk, unsigned a, unsigned b) -> const Rational& {
        return moments.at(std::make_tuple(kk, a, b));
    };

    std::vector<std::vector<Rational>> inner(n);
    for (std::size_t i = 0; i < n; ++i) inner[i] = inner_integral_coefficients(gens[i]);

    const std::size_t pairs = n * (n + 1) / 2;
    auto entries = parallel_map<std::pair<Rational, Rational>>(pairs, threads, [&](std::uint64_t idx) {
        std::size_t i = 0, rem_idx = idx;
        while (rem_idx >= n - i) {
            rem_idx -= n - i;
            ++i;
        }
        const std::size_t j = i + rem_idx;
        const auto& gi = gens[i];
        const auto& gj = gens[j];
        Rational m1 = T(k, gi.a + gj.a, gi.b + gj.b);
        Rational m2 = 0;
        for (unsigned s = 0; s <= gi.b; ++s)
            for (unsigned t = 0; t <= gj.b; ++t)
                m2 += inner[i][s] * inner[j][t] *
                      T(k - 1, gi.a + gj.a + 2 * s + 2 * t + 2, gi.b + gj.b - s - t);
        m2 *= k;
        return std::make_pair(std::move(m1), std::move(m2));
    });

    QuadraticFormPair forms{basis, Matrix<Rational>(n, std::vector<Rational>(n)),
                            Matrix<Rational>(n, std::vector<Rational>(n))};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++idx) {
            forms.M1[i][j] = forms.M1[j][i] = entries[idx].first;
            forms.M2[i][j] = forms.M2[j][i] = entries[idx].second;
        }
    return forms;
}

/// Exact LDL^T of M1 in basis order. A generator whose Schur pivot is zero is
/// linearly dependent on the earlier ones and is dropped; a negative pivot
/// means M1 is not positive semidefinite and is an error.
struct BasisReduction {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> dropped;
    std::vector<Rational> pivots;  ///< positive, one per kept generator
};

inline BasisReduction reduce_basis(const Matrix<Rational>& M1) {
    const std::size_t n = M1.size();
    BasisReduction out;
    Matrix<Rational> L;  // L[r][t] for kept rows r, t < r
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> row;
        for (std::size_t i = 0; i < out.kept.size(); ++i) {
            Rational v = M1[j][out.kept[i]];
            for (std::size_t t = 0; t < i; ++t) v -= row[t] * L[i][t] * out.pivots[t];
            row.push_back(v / out.pivots[i]);
        }
        Rational pivot = M1[j][j];
        for (std::size_t i = 0; i < row.size(); ++i) pivot -= row[i] * row[i] * out.pivots[i];
        if (pivot == 0) {
            out.dropped.push_back(j);
            continue;
        }
        if (pivot < 0) throw std::runtime_error("I_k form is not positive definite");
        out.kept.push_back(j);
        out.pivots.push_back(pivot);
        L.push_back(std::move(row));
    }
    return out;
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are returned ascending with eigenvectors as columns of V.
template <class Real>
void jacobi_eigen(Matrix<Real> A, std::vector<Real>& values, Matrix<Real>& V, const Real& tol) {
    using std::abs;
    using std::sqrt;
    const std::size_t n = A.size();
    V.assign(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i) V[i][i] = 1;
    Real scale = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale += A[i][j] * A[i][j];
    scale = sqrt(scale);
    for (int sweep = 0; sweep < 100; ++sweep) {
        Real off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
        if (sqrt(off) <= tol * scale) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (A[p][q] == 0) continue;
                const Real theta = (A[q][q] - A[p][p]) / (2 * A[p][q]);
                Real t = 1 / (abs(theta) + sqrt(theta * theta + 1));
                if (theta < 0) t = -t;
                const Real c = 1 / sqrt(t * t + 1);
                const Real s = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    const Real arp = A[r][p], arq = A[r][q];
                    A[r][p] = c * arp - s * arq;
                    A[r][q] = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Real apr = A[p][r], aqr = A[q][r];
                    A[p][r] = c * apr - s * aqr;
                    A[q][r] = s * apr + c * aqr;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Real vrp = V[r][p], vrq = V[r][q];
                    V[r][p] = c * vrp - s * vrq;
                    V[r][q] = s * vrp + c * vrq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return A[x][x] < A[y][y]; });
    values.clear();
    Matrix<Real> sorted(n, std::vector<Real>(n));
    for (std::size_t c = 0; c < n; ++c) {
        values.push_back(A[order[c]][order[c]]);
        for (std::size_t r = 0; r < n; ++r) sorted[r][c] = V[r][order[c]];
    }
    V = std::move(sorted);
}

/// Largest eigenpair of B v = lambda A v for symmetric B and positive
/// definite A, via Cholesky reduction to a standard problem.
template <class Real>
std::pair<Real, std::vector<Real>> top_generalized_eigenpair(const Matrix<Real>& A, const Matrix<Real>& B,
                                                             const Real& tol) {
    using std::sqrt;
    const std::size_t n = A.size();
    Matrix<Real> L(n, std::vector<Real>(n, Real(0)));
    for (std::size_t j = 0; j < n; ++j) {
        Real d = A[j][j];
        for (std::size_t t = 0; t < j; ++t) d -= L[j][t] * L[j][t];
        if (d <= 0) throw std::runtime_error("I_k form is numerically singular");
        L[j][j] = sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            Real v = A[i][j];
            for (std::size_t t = 0; t < j; ++t) v -= L[i][t] * L[j][t];
            L[i][j] = v / L[j][j];
        }
    }
    // X = L^{-1} B, then C = X L^{-T} = L^{-1} (L^{-1} B)^T.
    auto forward = [&](const std::vector<Real>& rhs) {
        std::vector<Real> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            Real v = rhs[i];
            for (std::size_t t = 0; t < i; ++t) v -= L[i][t] * x[t];
            x[i] = v / L[i][i];
        }
        return x;
    };
    Matrix<Real> X(n, std::vector<Real>(n));
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Real> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = B[r][c];
        auto x = forward(col);
        for (std::size_t r = 0; r < n; ++r) X[r][c] = x[r];
    }
    Matrix<Real> C(n, std::vector<Real>(n));
    for (std::size_t r = 0; r < n; ++r) {
        auto x = forward(X[r]);  // row r of X is column r of X^T
        for (std::size_t c = 0; c < n; ++c) C[c][r] = x[c];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) C[i][j] = C[j][i] = (C[i][j] + C[j][i]) / 2;

    std::vector<Real> values;
    Matrix<Real> V;
    jacobi_eigen(C, values, V, tol);
    std::vector<Real> u(n);
    for (std::size_t r = 0; r < n; ++r) u[r] = V[r][n - 1];
    // v = L^{-T} u
    std::vector<Real> v(n);
    for (std::size_t i = n; i-- > 0;) {
        Real s = u[i];
        for (std::size_t t = i + 1; t < n; ++t) s -= L[t][i] * v[t];
        v[i] = s / L[i][i];
    }
    return {values.back(), v};
}

struct MkResult {
    unsigned k = 1;
    unsigned degree_bound = 0;
    double lower_bound = 0.0;     ///< exact Rayleigh quotient rounded down
    double eigenvalue = 0.0;      ///< floating-point eigenvalue
    double residual = 0.0;        ///< ||M2 v - lambda M1 v|| / ||M1 v||
    std::size_t basis_size = 0;   ///< generators kept after reduction
    std::vector<BasisElement> generators;  ///< full basis
    std::vector<double> coefficients;      ///< over the full basis, zero for dropped generators
    std::vector<std::size_t> dropped;
    Rational rayleigh_exact;
};

inline double round_down(const Rational& q) {
    double d = q.convert_to<double>();
    if (Rational(d) > q) d = std::nextafter(d, -INFINITY);
    return d;
}

inline Rational quadratic_value(const Matrix<Rational>& M, const std::vector<Rational>& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        Rational row = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) row += M[i][j] * v[j];
        s += v[i] * row;
    }
    return s;
}

inline MkResult mk_from_forms(const QuadraticFormPair& forms) {
    const auto reduction = reduce_basis(forms.M1);
    const std::size_t m = reduction.kept.size();
    Matrix<HighFloat> A(m, std::vector<HighFloat>(m)), B(m, std::vector<HighFloat>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            A[i][j] = HighFloat(forms.M1[reduction.kept[i]][reduction.kept[j]]);
            B[i][j] = HighFloat(forms.M2[reduction.kept[i]][reduction.kept[j]]);
        }
    const HighFloat tol("1e-80");
    auto [lambda, v] = top_generalized_eigenpair(A, B, tol);

    HighFloat vmax = 0;
    for (const auto& x : v) vmax = std::max(vmax, HighFloat(abs(x)));
    for (auto& x : v) x /= vmax;

    HighFloat res2 = 0, norm2 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        HighFloat av = 0, bv = 0;
        for (std::size_t j = 0; j < m; ++j) {
            av += A[i][j] * v[j];
            bv += B[i][j] * v[j];
        }
        res2 += (bv - lambda * av) * (bv - lambda * av);
        norm2 += av * av;
    }

    const std::size_t n = forms.basis.size();
    std::vector<Rational> exact(n, Rational(0));
    MkResult out;
    out.k = forms.basis.k;
    out.degree_bound = forms.basis.degree_bound;
    out.generators = forms.basis.generators;
    out.coefficients.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        exact[reduction.kept[i]] = Rational(v[i]);
        out.coefficients[reduction.kept[i]] = v[i].convert_to<double>();
    }
    out.rayleigh_exact = quadratic_value(forms.M2, exact) / quadratic_value(forms.M1, exact);
    out.lower_bound = round_down(out.rayleigh_exact);
    out.eigenvalue = lambda.convert_to<double>();
    out.residual = norm2 == 0 ? 0.0 : HighFloat(sqrt(res2 / norm2)).convert_to<double>();
    out.basis_size = m;
    out.dropped = reduction.dropped;
    return out;
}

inline unsigned default_degree_bound(unsigned k) { return k <= 20 ? 7 : 11; }

inline MkResult mk_lower_bound(unsigned k, unsigned degree_bound, unsigned threads = 1) {
    return mk_from_forms(build_forms(SymmetricBasis::standard(k, degree_bound), threads));
}

/// ceil(theta * mk / 2) as displayed; an exact integer value of theta*mk/2
/// is not bumped to the next integer.
inline long r_k(double theta, double mk) {
    require(theta > 0 && theta <= 1, "theta must lie in (0, 1]");
    require(mk > 0, "M_k must be positive");
    return static_cast<long>(std::ceil(theta * mk / 2));
}

/// F(x) = sum_i c_i (1 - P1)^{a_i} P2^{b_i}, zero off the simplex.
inline double evaluate_basis_function(const std::vector<BasisElement>& gens, const std::vector<double>& coeffs,
                                      double p1, double p2) {
    if (p1 > 1.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (coeffs[i] != 0.0)
            s += coeffs[i] * std::pow(1.0 - p1, static_cast<int>(gens[i].a)) *
                 std::pow(p2, static_cast<int>(gens[i].b));
    return s;
}

}  // namespace sievelab
