#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "steinberg/error.hpp"

namespace steinberg::padic {

// Class in K^x / K^x2 for K/Q_p, p odd: valuation parity v and unit bit u
// (0 square, 1 non-square). Representatives 1, e0, pi, e0*pi.
struct SquareClass {
    int v = 0;
    int u = 0;
    int p = 3;

    bool operator==(const SquareClass& o) const { return v == o.v && u == o.u && p == o.p; }
    bool operator<(const SquareClass& o) const { return v != o.v ? v < o.v : u < o.u; }
    SquareClass operator*(const SquareClass& o) const;
    int index() const { return 2 * v + u; }  // 0:1 1:e0 2:pi 3:e0*pi
    std::string to_string() const;
};

bool is_odd_prime(int p);
int least_nonresidue(int p);
int legendre(long long a, int p);

std::vector<SquareClass> all_classes(int p);
SquareClass class_of_index(int i, int p);
SquareClass square_class(const mpq_class& a, int p);  // ZeroInput on 0
SquareClass minus_one(int p);

int hilbert_symbol(const SquareClass& a, const SquareClass& b);  // PrimeMismatch

// Solvability of a x^2 + b y^2 = z^2 with a primitive solution mod p^3, for
// a = p^v u0 with u0 = 1 or the given non-residue.
bool hilbert_oracle(const SquareClass& a, const SquareClass& b, int nonresidue);

struct DiagonalForm {
    int p = 3;
    std::vector<SquareClass> entries;

    int n() const { return int(entries.size()); }
    SquareClass discriminant() const;
};

int hasse_invariant(const DiagonalForm& f);

struct Invariants {
    SquareClass disc;
    int hasse = 1;
    bool operator==(const Invariants& o) const { return disc == o.disc && hasse == o.hasse; }
    bool operator<(const Invariants& o) const { return disc < o.disc || (disc == o.disc && hasse < o.hasse); }
};

Invariants invariants(const DiagonalForm& f);

using QMatrix = std::vector<std::vector<mpq_class>>;

struct Diagonalization {
    std::vector<mpq_class> diagonal;
    DiagonalForm form;
};

// Congruence diagonalization over Q; BadParams if not square/symmetric, Singular if det = 0.
Diagonalization diagonalize(const QMatrix& A, int p);

// Parses "a,b;c,d" (rows separated by ';', entries integers or fractions).
QMatrix parse_matrix(const std::string& text);

struct Quintuple {
    int n11 = 0, n12 = 0, n21 = 0, n22 = 0, r = 0;
    int n1() const { return n11 + n12; }
    int n2() const { return n21 + n22; }
    int n() const { return n1() + n2() + 2 * r; }
    bool operator==(const Quintuple& o) const {
        return n11 == o.n11 && n12 == o.n12 && n21 == o.n21 && n22 == o.n22 && r == o.r;
    }
};

// r hyperbolic planes diag(1,-1), then n11 x 1, n12 x e0, n21 x pi, n22 x e0*pi.
DiagonalForm delta_form(const Quintuple& t, int p);
int delta_hasse_closed(const Quintuple& t, int p);
SquareClass delta_disc_closed(const Quintuple& t, int p);

// (disc, Hasse) pairs of non-degenerate forms of dimension n.
std::vector<Invariants> realizable_invariants(int n, int p);
Invariants split_invariants(int n, int p);  // those of J_n

enum class OrthType { Split, QuasiSplit, NonQuasiSplit };
std::string to_string(OrthType t);
OrthType orthogonal_type(int n, const Invariants& inv, int p);  // BadTarget if not realizable

std::vector<Quintuple> apartment_classes(int n, const Invariants& target, int p);

struct ThetaClass {
    int n1 = 0, n2 = 0, r = 0;
    bool operator==(const ThetaClass& o) const { return n1 == o.n1 && n2 == o.n2 && r == o.r; }
    bool operator<(const ThetaClass& o) const {
        return n1 != o.n1 ? n1 < o.n1 : n2 != o.n2 ? n2 < o.n2 : r < o.r;
    }
};

std::vector<ThetaClass> theta_equiv_classes(int n, const Invariants& target, int p);  // SmallN for n < 3

enum class Subgroup { SO, O };
int distinction_dimension(int n, const Invariants& target, Subgroup h, int p);
int closed_form_dimension(int n, OrthType t, Subgroup h);
int sum_over_classes(int n, int p);
int epsilon_G(int n, long long det_valuation);

}  // namespace steinberg::padic
