#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "steinberg/padicforms.hpp"

using namespace steinberg;
using namespace steinberg::padic;

namespace {

const int kPrimes[] = {3, 5, 7, 13};

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

// a x^2 + b y^2 = z^2 with (x, y) not both divisible by p, modulo p^3.
bool solvable_mod_p3(long long a, long long b, int p) {
    const long long m = 1LL * p * p * p;
    std::vector<char> sq(m, 0);
    for (long long z = 0; z < m; ++z) sq[z * z % m] = 1;
    for (long long x = 0; x < m; ++x)
        for (long long y = 0; y < m; ++y) {
            if (x % p == 0 && y % p == 0) continue;
            if (sq[mod(a * x % m * x + b * y % m * y, m)]) return true;
        }
    return false;
}

long long representative(const SquareClass& c, int nonres) { return (c.u ? nonres : 1) * (c.v ? c.p : 1); }

int first_nonresidue(int p) {
    for (int a = 2; a < p; ++a) {
        bool sq = false;
        for (int x = 1; x < p; ++x) sq = sq || (x * x % p == a);
        if (!sq) return a;
    }
    return 0;
}

mpq_class random_rational(std::mt19937_64& rng, int p) {
    long long num = 0;
    while (num == 0) num = (long long)(rng() % 2001) - 1000;
    long long den = (long long)(rng() % 50) + 1;
    mpq_class x{long(num), long(den)};
    x.canonicalize();
    if (rng() % 3 == 0) x *= p;
    if (rng() % 5 == 0) x /= p;
    return x;
}

// Paper's dimension table for H' = O_n (and H = SO_n except n = 2 split).
int table_dimension(int n, OrthType t, Subgroup h) {
    if (n == 1) return 1;
    if (n == 2 && t == OrthType::Split) return h == Subgroup::SO ? 4 : 3;
    const int k = n / 2;
    if (n % 2 == 0) {
        if (t == OrthType::Split) return (k + 1) * (k + 2) / 2;
        if (t == OrthType::QuasiSplit) return k * (k + 1) / 2;
        return (k - 1) * k / 2;
    }
    return t == OrthType::Split ? (k + 1) * (k + 2) / 2 : k * (k + 1) / 2;
}

}  // namespace

TEST_CASE("primes and residues") {
    CHECK(is_odd_prime(3));
    CHECK_FALSE(is_odd_prime(2));
    CHECK_FALSE(is_odd_prime(9));
    for (int p : kPrimes) CHECK(least_nonresidue(p) == first_nonresidue(p));
    CHECK(legendre(-1, 5) == 1);
    CHECK(legendre(-1, 7) == -1);
}

TEST_CASE("square classes of rationals") {
    CHECK(square_class(mpq_class(1), 5).index() == 0);
    CHECK(square_class(mpq_class(2), 5).index() == 1);
    CHECK(square_class(mpq_class(5), 5).index() == 2);
    CHECK(square_class(mpq_class(10), 5).index() == 3);
    CHECK(square_class(mpq_class(2, 25), 5).index() == 1);
    CHECK(square_class(mpq_class(1, 5), 5).index() == 2);
    CHECK(minus_one(7).index() == 1);
    CHECK(minus_one(13).index() == 0);
    CHECK_THROWS_AS(square_class(mpq_class(0), 5), ZeroInput);
    CHECK_THROWS_AS(square_class(mpq_class(3), 4), BadParams);
    CHECK_THROWS_AS(class_of_index(4, 5), BadParams);
}

TEST_CASE("hilbert symbol agrees with brute-force solvability") {
    for (int p : kPrimes) {
        const int e0 = first_nonresidue(p);
        for (const auto& a : all_classes(p))
            for (const auto& b : all_classes(p)) {
                CAPTURE(p);
                CAPTURE(a.to_string());
                CAPTURE(b.to_string());
                const int expect = solvable_mod_p3(representative(a, e0), representative(b, e0), p) ? 1 : -1;
                CHECK(hilbert_symbol(a, b) == expect);
                CHECK(hilbert_oracle(a, b, e0) == (expect == 1));
            }
    }
    CHECK_THROWS_AS(hilbert_symbol(class_of_index(1, 3), class_of_index(1, 5)), PrimeMismatch);
}

TEST_CASE("hilbert symbol: bimultiplicativity, symmetry and Steinberg relation") {
    std::mt19937_64 rng(31337);
    int n = 0;
    for (int p : kPrimes) {
        for (int t = 0; t < 100; ++t, ++n) {
            mpq_class a = random_rational(rng, p), b = random_rational(rng, p), c = random_rational(rng, p);
            auto A = square_class(a, p), B = square_class(b, p), C = square_class(c, p);
            CHECK(hilbert_symbol(A, B) == hilbert_symbol(B, A));
            CHECK(hilbert_symbol(square_class(a * b, p), C) == hilbert_symbol(A, C) * hilbert_symbol(B, C));
            CHECK(hilbert_symbol(A, square_class(-a, p)) == 1);
            if (a != 1) CHECK(hilbert_symbol(A, square_class(1 - a, p)) == 1);
        }
    }
    CHECK(n >= 100);
}

TEST_CASE("diagonalization invariance under congruence") {
    std::mt19937_64 rng(4242);
    for (int p : kPrimes) {
        int done = 0;
        while (done < 100) {
            const int n = 1 + int(rng() % 4);
            QMatrix A(n, std::vector<mpq_class>(n));
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) A[i][j] = A[j][i] = mpq_class(long(rng() % 21) - 10);
            Diagonalization d;
            try {
                d = diagonalize(A, p);
            } catch (const Singular&) {
                continue;
            }
            // P^T A P with P unit upper triangular times a random diagonal
            QMatrix P(n, std::vector<mpq_class>(n, 0));
            for (int i = 0; i < n; ++i) {
                P[i][i] = long(rng() % 6) + 1;
                for (int j = i + 1; j < n; ++j) P[i][j] = long(rng() % 11) - 5;
            }
            QMatrix B(n, std::vector<mpq_class>(n, 0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) B[i][j] += P[k][i] * A[k][l] * P[l][j];
            auto e = diagonalize(B, p);
            CHECK(invariants(d.form) == invariants(e.form));
            // discriminant is the class of the determinant
            mpq_class det = 1;
            for (const auto& x : d.diagonal) det *= x;
            CHECK(invariants(d.form).disc == square_class(det, p));
            ++done;
        }
    }
}

TEST_CASE("diagonalization errors and parsing") {
    CHECK_THROWS_AS(diagonalize(parse_matrix("1,2;2,4"), 5), Singular);
    CHECK_THROWS_AS(diagonalize(parse_matrix("1,2;3,4"), 5), BadParams);
    CHECK_THROWS_AS(parse_matrix("1,2;3"), BadParams);
    auto m = parse_matrix("1/2,0;0,-3");
    CHECK(m[0][0] == mpq_class(1, 2));
    CHECK(m[1][1] == -3);
    auto d = diagonalize(parse_matrix("0,1;1,0"), 7);
    CHECK(invariants(d.form) == split_invariants(2, 7));
}

TEST_CASE("delta forms match closed invariants") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 200; ++t) {
        const int p = kPrimes[rng() % 4];
        Quintuple q{int(rng() % 3), int(rng() % 3), int(rng() % 3), int(rng() % 3), int(rng() % 3)};
        if (q.n() == 0) q.n11 = 1;
        auto f = delta_form(q, p);
        CHECK(f.n() == q.n());
        CHECK(hasse_invariant(f) == delta_hasse_closed(q, p));
        CHECK(f.discriminant() == delta_disc_closed(q, p));
    }
}

TEST_CASE("non-residue choice does not change invariants") {
    std::mt19937_64 rng(8);
    for (int p : kPrimes) {
        std::vector<long long> nonres;
        for (int a = 1; a < p; ++a)
            if (legendre(a, p) == -1) nonres.push_back(a);
        for (int t = 0; t < 40; ++t) {
            Quintuple q{int(rng() % 3), int(rng() % 3), int(rng() % 3), int(rng() % 3), int(rng() % 2)};
            if (q.n() == 0) continue;
            // Same quintuple realized with another non-residue and random square factors.
            const long long e = nonres[rng() % nonres.size()];
            std::vector<mpq_class> diag;
            for (int i = 0; i < q.r; ++i) {
                diag.push_back(1);
                diag.push_back(-1);
            }
            auto push = [&](int count, long long base) {
                for (int i = 0; i < count; ++i) {
                    long long s = long(rng() % 5) + 1;
                    while (s % p == 0) ++s;
                    diag.push_back(mpq_class(long(base * s * s)));
                }
            };
            push(q.n11, 1);
            push(q.n12, e);
            push(q.n21, p);
            push(q.n22, e * p);
            DiagonalForm f;
            f.p = p;
            for (const auto& x : diag) f.entries.push_back(square_class(x, p));
            CHECK(invariants(f) == invariants(delta_form(q, p)));
        }
    }
}

TEST_CASE("classification of forms") {
    for (int p : kPrimes) {
        CHECK(realizable_invariants(1, p).size() == 4);
        CHECK(realizable_invariants(2, p).size() == 7);
        for (int n = 3; n <= 8; ++n) CHECK(realizable_invariants(n, p).size() == 8);
        for (int n = 1; n <= 9; ++n) {
            std::map<OrthType, int> counts;
            for (const auto& inv : realizable_invariants(n, p)) counts[orthogonal_type(n, inv, p)]++;
            CAPTURE(n);
            if (n == 1) CHECK(counts[OrthType::Split] == 4);
            else if (n == 2) {
                CHECK(counts[OrthType::Split] == 1);
                CHECK(counts[OrthType::QuasiSplit] == 6);
            } else if (n % 2 == 1) {
                CHECK(counts[OrthType::Split] == 4);
                CHECK(counts[OrthType::NonQuasiSplit] == 4);
            } else {
                CHECK(counts[OrthType::Split] == 1);
                CHECK(counts[OrthType::QuasiSplit] == 6);
                CHECK(counts[OrthType::NonQuasiSplit] == 1);
            }
            CHECK(orthogonal_type(n, split_invariants(n, p), p) == OrthType::Split);
        }
        // exactly one (disc, hasse) pair is not realized in dimension 2
        int missing = 0;
        const auto real = realizable_invariants(2, p);
        for (const auto& d : all_classes(p))
            for (int h : {1, -1}) {
                Invariants inv{d, h};
                if (std::find(real.begin(), real.end(), inv) != real.end()) continue;
                ++missing;
                CHECK_THROWS_AS(orthogonal_type(2, inv, p), BadTarget);
            }
        CHECK(missing == 1);
    }
}

TEST_CASE("apartment classes") {
    for (int p : kPrimes) {
        const auto cl = apartment_classes(2, split_invariants(2, p), p);
        // diag(a, -a) for the four classes a, plus the hyperbolic plane; they
        // collapse in pairs when -1 is not a square.
        CHECK(cl.size() == (p % 4 == 1 ? 5u : 3u));
        for (int k = 1; k <= 6; ++k) {
            int with_full_r = 0;
            for (const auto& q : apartment_classes(2 * k, split_invariants(2 * k, p), p)) {
                CHECK(q.n() == 2 * k);
                if (q.r == k) {
                    ++with_full_r;
                    CHECK(q == Quintuple{0, 0, 0, 0, k});
                }
            }
            CHECK(with_full_r == 1);
        }
    }
    CHECK_THROWS_AS(theta_equiv_classes(2, split_invariants(2, 5), 5), SmallN);
}

TEST_CASE("distinction dimensions reproduce the table") {
    for (int p : kPrimes) {
        for (int n = 1; n <= 12; ++n) {
            for (const auto& inv : realizable_invariants(n, p)) {
                const OrthType t = orthogonal_type(n, inv, p);
                for (Subgroup h : {Subgroup::SO, Subgroup::O}) {
                    CAPTURE(n);
                    CAPTURE(p);
                    CHECK(distinction_dimension(n, inv, h, p) == table_dimension(n, t, h));
                    CHECK(closed_form_dimension(n, t, h) == table_dimension(n, t, h));
                }
            }
            CHECK(sum_over_classes(n, p) == (n + 1) * (n + 1));
        }
    }
}

TEST_CASE("epsilon_G") {
    CHECK(epsilon_G(2, 1) == -1);
    CHECK(epsilon_G(3, 1) == 1);
    CHECK(epsilon_G(2, 2) == 1);
    CHECK(epsilon_G(4, -3) == -1);
    CHECK(epsilon_G(1, 7) == 1);
}
