#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "steinberg/error.hpp"

namespace steinberg::ffalg {

// Field elements are indices sum c_i p^i over the coefficient vector of the
// polynomial representative, little-endian.
using Elt = std::uint16_t;

bool is_prime(long long n);
// q = p^k with p an odd prime, else BadField.
std::pair<int, int> prime_power(long long q);

class FiniteField {
public:
    static constexpr int kMaxOrder = 1024;

    FiniteField(int p, int k);

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    // Monic modulus, little-endian, size k+1.
    const std::vector<int>& modulus() const { return modulus_; }

    Elt add(Elt a, Elt b) const { return add_[std::size_t(a) * q_ + b]; }
    Elt neg(Elt a) const { return neg_[a]; }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt mul(Elt a, Elt b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elt inv(Elt a) const;
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, long long e) const;
    // x -> x^(p^j)
    Elt frob(Elt a, int j = 1) const;

    Elt from_int(long long n) const;
    std::vector<int> coeffs(Elt a) const;
    Elt from_coeffs(const std::vector<int>& c) const;

    Elt primitive() const { return exp_[1]; }
    int log(Elt a) const;  // a != 0
    bool is_square(Elt a) const { return a == 0 || log_[a] % 2 == 0; }
    // 0 for zero, +1 for nonzero squares, -1 otherwise.
    int legendre(Elt a) const;
    // Fixed points of frob^j, in increasing index order.
    std::vector<Elt> fixed_subfield(int j) const;
    std::string to_string(Elt a) const;

private:
    int p_, k_, q_;
    std::vector<int> modulus_;
    std::vector<Elt> add_, neg_, exp_;
    std::vector<int> log_;
    std::vector<std::vector<Elt>> frob_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// Shared, immutable GF(q).
FieldPtr field(int q);

// Lexicographically least monic irreducible of degree k over GF(p), ordered by
// the integer sum c_i p^i of the non-leading coefficients.
std::vector<int> least_irreducible(int p, int k);

// Square matrix with n <= 4.
struct Mat {
    int n = 0;
    std::array<Elt, 16> a{};

    Elt& operator()(int i, int j) { return a[i * 4 + j]; }
    Elt operator()(int i, int j) const { return a[i * 4 + j]; }
    bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
    bool operator<(const Mat& o) const { return n != o.n ? n < o.n : a < o.a; }
};

struct MatHash {
    std::size_t operator()(const Mat& m) const noexcept;
};

Mat identity(int n);
Mat diag(const std::vector<Elt>& d);
Mat from_rows(const std::vector<std::vector<Elt>>& rows);
Mat mul(const FiniteField& F, const Mat& A, const Mat& B);
Mat transpose(const Mat& A);
Mat frob(const FiniteField& F, const Mat& A, int j);
Mat scale(const FiniteField& F, Elt c, const Mat& A);
Elt det(const FiniteField& F, const Mat& A);
Mat inverse(const FiniteField& F, const Mat& A);  // BadParams if singular
// Antidiagonal matrix of ones (w0 / J_n).
Mat antidiagonal(int n);
std::string to_string(const FiniteField& F, const Mat& A);

// Row-reduce a list of row vectors of length n; returns the nonzero rows of
// the reduced echelon form (leading entry 1).
std::vector<std::vector<Elt>> rref(const FiniteField& F, std::vector<std::vector<Elt>> rows);
// Basis of {w : A w = 0} for A given by rows of length n.
std::vector<std::vector<Elt>> nullspace(const FiniteField& F, const std::vector<std::vector<Elt>>& rows, int n);
std::vector<Elt> apply(const FiniteField& F, const Mat& g, const std::vector<Elt>& v);

enum class GroupKind { SL2, SU3, GLn, SOn, Un };

struct GroupSpec {
    GroupKind kind = GroupKind::SL2;
    int n = 2;
    // Field of matrix entries. For SU3 and Un this is l2 = GF(q^2).
    FieldPtr F;
    // Order of the base field l (for SU/U the fixed field of sigma).
    int q = 0;
    // sigma = frob^sigma_power on F; 0 when there is no sigma.
    int sigma_power = 0;
    // Form matrix: symmetric for SOn, hermitian for Un and SU3 (antidiagonal).
    Mat form;

    std::string name() const;
};

GroupSpec sl2(int q);
GroupSpec su3(int q);
GroupSpec gln(int n, int q);
GroupSpec son(const Mat& eps, int q);
// Unitary group for sigma(x)^T J x; J defaults to the antidiagonal.
GroupSpec un(int n, int q);
GroupSpec un(int n, int q, const Mat& form);

bool contains(const GroupSpec& G, const Mat& g);
// Classical order formula, saturating at UINT64_MAX.
std::uint64_t group_order(const GroupSpec& G);

// STEINBERG_KIT_CAP if set and valid, else 10^7.
std::uint64_t default_cap();

void for_each_element(const GroupSpec& G, const std::function<void(const Mat&)>& fn,
                      std::uint64_t cap = default_cap());
std::vector<Mat> enumerate_group(const GroupSpec& G, std::uint64_t cap = default_cap());

// A flag of subspaces of F^n, each stored as its RREF basis rows.
struct BorelPoint {
    int n = 0;
    std::vector<int> dims;
    std::vector<Elt> data;

    bool operator==(const BorelPoint& o) const { return n == o.n && dims == o.dims && data == o.data; }
    bool operator<(const BorelPoint& o) const;
    std::vector<std::vector<Elt>> space(std::size_t i) const;
    static BorelPoint from_spaces(const FiniteField& F, int n, const std::vector<std::vector<std::vector<Elt>>>& spaces);
};

struct BorelHash {
    std::size_t operator()(const BorelPoint& b) const noexcept;
};

std::string to_string(const FiniteField& F, const BorelPoint& b);

std::uint64_t borel_count(const GroupSpec& G);
std::vector<BorelPoint> enumerate_borels(const GroupSpec& G, std::uint64_t cap = default_cap());
// Checked action; NotInGroup if g is not in G.
BorelPoint act_on_borel(const GroupSpec& G, const Mat& g, const BorelPoint& b);
// Unchecked action g.b on column vectors.
BorelPoint act(const FiniteField& F, const Mat& g, const BorelPoint& b);
// Standard point: e1 (line) or the standard flag; stabilised by upper triangular.
BorelPoint standard_borel(const GroupSpec& G);
// Opposite point: e_n or the flag e_n, e_n+e_{n-1}, ...
BorelPoint opposite_borel(const GroupSpec& G);

// Cached per-group data used by the orbit computations.
struct GroupData {
    GroupSpec spec;
    std::vector<BorelPoint> borels;
    std::unordered_map<BorelPoint, int, BorelHash> index;
    int x0 = 0;
    int x0_opposite = 0;
    // Stabiliser of x0 (upper triangular elements of the group).
    std::vector<Mat> borel_subgroup;
    // transporter[i] . x0 == borels[i]
    std::vector<Mat> transporter;
    // |Stab(x0) cap Stab(x0_opposite)|
    std::uint64_t torus_order = 0;
};

std::shared_ptr<const GroupData> group_data(const GroupSpec& G, std::uint64_t cap = default_cap());
// Cached full element list.
std::shared_ptr<const std::vector<Mat>> group_elements(const GroupSpec& G, std::uint64_t cap = default_cap());

}  // namespace steinberg::ffalg
