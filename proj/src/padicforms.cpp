#include "steinberg/padicforms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace steinberg::padic {

namespace {

void check_prime(int p) {
    if (!is_odd_prime(p)) throw BadParams("p=" + std::to_string(p) + " is not an odd prime");
}

}  // namespace

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

int legendre(long long a, int p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    long long r = 1, b = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

int least_nonresidue(int p) {
    check_prime(p);
    for (int a = 2;; ++a)
        if (legendre(a, p) == -1) return a;
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
    if (p != o.p) throw PrimeMismatch("square classes for p=" + std::to_string(p) + " and p=" + std::to_string(o.p));
    return {v ^ o.v, u ^ o.u, p};
}

std::string SquareClass::to_string() const {
    static const char* names[] = {"1", "e0", "pi", "e0*pi"};
    return names[index()];
}

std::vector<SquareClass> all_classes(int p) {
    check_prime(p);
    return {{0, 0, p}, {0, 1, p}, {1, 0, p}, {1, 1, p}};
}

SquareClass class_of_index(int i, int p) {
    check_prime(p);
    if (i < 0 || i > 3) throw BadParams("square class index must be 0..3");
    return {(i >> 1) & 1, i & 1, p};
}

SquareClass square_class(const mpq_class& a, int p) {
    check_prime(p);
    if (a == 0) throw ZeroInput("square class of 0");
    mpz_class num = a.get_num(), den = a.get_den();
    int v = 0;
    const mpz_class P = p;
    while (num % P == 0) {
        num /= P;
        ++v;
    }
    while (den % P == 0) {
        den /= P;
        --v;
    }
    mpz_class unit = num * den;  // same square class as num/den
    mpz_class r = unit % P;
    if (r < 0) r += P;
    const int leg = legendre(r.get_si(), p);
    return {v & 1, leg == 1 ? 0 : 1, p};
}

SquareClass minus_one(int p) {
    check_prime(p);
    return {0, legendre(-1, p) == 1 ? 0 : 1, p};
}

int hilbert_symbol(const SquareClass& a, const SquareClass& b) {
    if (a.p != b.p) throw PrimeMismatch("Hilbert symbol of classes for different primes");
    const int lm1 = legendre(-1, a.p);
    int s = 1;
    if (a.v && b.v) s *= lm1;
    if (a.u && b.v) s = -s;
    if (b.u && a.v) s = -s;
    return s;
}

bool hilbert_oracle(const SquareClass& a, const SquareClass& b, int nonresidue) {
    const int p = a.p;
    if (b.p != p) throw PrimeMismatch("oracle classes for different primes");
    if (legendre(nonresidue, p) != -1) throw BadParams("representative is not a non-residue");
    const long long M = 1LL * p * p * p;
    auto rep = [&](const SquareClass& c) { return (c.v ? p : 1LL) * (c.u ? nonresidue : 1LL) % M; };
    const long long A = rep(a), B = rep(b);
    std::vector<char> square(M, 0);
    std::vector<long long> sq(M);
    for (long long z = 0; z < M; ++z) {
        sq[z] = z * z % M;
        square[sq[z]] = 1;
    }
    // A solution is primitive iff x or y is a unit: if p | x, y then p^2 | z^2
    // forces p | z.
    for (long long x = 0; x < M; ++x) {
        const long long ax = A * sq[x] % M;
        for (long long y = 0; y < M; ++y) {
            if (x % p == 0 && y % p == 0) continue;
            if (square[(ax + B * sq[y]) % M]) return true;
        }
    }
    return false;
}

SquareClass DiagonalForm::discriminant() const {
    SquareClass d{0, 0, p};
    for (const auto& e : entries) d = d * e;
    return d;
}

int hasse_invariant(const DiagonalForm& f) {
    int h = 1;
    for (int i = 0; i < f.n(); ++i)
        for (int j = i + 1; j < f.n(); ++j) h *= hilbert_symbol(f.entries[i], f.entries[j]);
    return h;
}

Invariants invariants(const DiagonalForm& f) { return {f.discriminant(), hasse_invariant(f)}; }

Diagonalization diagonalize(const QMatrix& in, int p) {
    check_prime(p);
    const std::size_t n = in.size();
    for (const auto& row : in)
        if (row.size() != n) throw BadParams("matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (in[i][j] != in[j][i]) throw BadParams("matrix is not symmetric");
    if (n == 0) throw BadParams("empty matrix");
    QMatrix A = in;
    auto swap_rc = [&](std::size_t i, std::size_t j) {
        std::swap(A[i], A[j]);
        for (auto& row : A) std::swap(row[i], row[j]);
    };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n && piv == n; ++i)
            if (A[i][i] != 0) piv = i;
        if (piv == n) {
            // Zero diagonal: add row/column j to i for some A[i][j] != 0.
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (A[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) throw Singular("matrix is singular");
            for (std::size_t c = 0; c < n; ++c) A[pi][c] += A[pj][c];
            for (std::size_t r = 0; r < n; ++r) A[r][pi] += A[r][pj];
            piv = pi;
        }
        if (piv != k) swap_rc(piv, k);
        for (std::size_t j = k + 1; j < n; ++j) {
            if (A[j][k] == 0) continue;
            const mpq_class c = A[j][k] / A[k][k];
            for (std::size_t t = 0; t < n; ++t) A[j][t] -= c * A[k][t];
            for (std::size_t t = 0; t < n; ++t) A[t][j] -= c * A[t][k];
        }
    }
    Diagonalization d;
    d.form.p = p;
    for (std::size_t i = 0; i < n; ++i) {
        d.diagonal.push_back(A[i][i]);
        d.form.entries.push_back(square_class(A[i][i], p));
    }
    return d;
}

QMatrix parse_matrix(const std::string& text) {
    QMatrix A;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::vector<mpq_class> r;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
            if (cell.empty()) throw BadParams("empty matrix entry in '" + text + "'");
            mpq_class v;
            if (v.set_str(cell, 10) != 0) throw BadParams("bad matrix entry '" + cell + "'");
            if (v.get_den() == 0) throw BadParams("zero denominator in '" + cell + "'");
            v.canonicalize();
            r.push_back(v);
        }
        if (!A.empty() && r.size() != A.front().size()) throw BadParams("ragged matrix '" + text + "'");
        A.push_back(std::move(r));
    }
    if (A.empty()) throw BadParams("empty matrix");
    return A;
}

DiagonalForm delta_form(const Quintuple& t, int p) {
    check_prime(p);
    if (t.n11 < 0 || t.n12 < 0 || t.n21 < 0 || t.n22 < 0 || t.r < 0)
        throw BadParams("quintuple entries must be non-negative");
    DiagonalForm f;
    f.p = p;
    for (int i = 0; i < t.r; ++i) {
        f.entries.push_back({0, 0, p});
        f.entries.push_back(minus_one(p));
    }
    const int counts[4] = {t.n11, t.n12, t.n21, t.n22};
    for (int c = 0; c < 4; ++c)
        for (int i = 0; i < counts[c]; ++i) f.entries.push_back(class_of_index(c, p));
    return f;
}

int delta_hasse_closed(const Quintuple& t, int p) {
    const SquareClass e0{0, 1, p}, pi{1, 0, p};
    const int m1pi = hilbert_symbol(minus_one(p), pi);
    const int e0pi = hilbert_symbol(e0, pi);
    const int pipi = hilbert_symbol(pi, pi);
    const int n2 = t.n2();
    auto pw = [](int s, long long e) { return (e % 2 == 0) ? 1 : s; };
    return pw(m1pi, 1LL * t.r * n2) * pw(e0pi, 1LL * (t.n12 + t.n22) * n2 - t.n22) *
           pw(pipi, 1LL * n2 * (n2 - 1) / 2);
}

SquareClass delta_disc_closed(const Quintuple& t, int p) {
    // (-1)^r e0^(n12+n22) pi^n2
    SquareClass d{t.n2() & 1, (t.n12 + t.n22) & 1, p};
    if (t.r & 1) d = d * minus_one(p);
    return d;
}

namespace {

Invariants invariants_of_counts(const int c[4], int p) {
    DiagonalForm f;
    f.p = p;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < c[k]; ++i) f.entries.push_back(class_of_index(k, p));
    return invariants(f);
}

// Invariants of kH + extra.
Invariants hyperbolic_plus(int k, const std::vector<SquareClass>& extra, int p) {
    DiagonalForm f;
    f.p = p;
    for (int i = 0; i < k; ++i) {
        f.entries.push_back({0, 0, p});
        f.entries.push_back(minus_one(p));
    }
    for (const auto& e : extra) f.entries.push_back(e);
    return invariants(f);
}

}  // namespace

std::vector<Invariants> realizable_invariants(int n, int p) {
    check_prime(p);
    if (n < 1) throw BadParams("n must be >= 1");
    std::set<Invariants> seen;
    int c[4];
    for (c[0] = 0; c[0] <= n; ++c[0])
        for (c[1] = 0; c[0] + c[1] <= n; ++c[1])
            for (c[2] = 0; c[0] + c[1] + c[2] <= n; ++c[2]) {
                c[3] = n - c[0] - c[1] - c[2];
                seen.insert(invariants_of_counts(c, p));
            }
    return {seen.begin(), seen.end()};
}

Invariants split_invariants(int n, int p) {
    check_prime(p);
    if (n % 2 == 0) return hyperbolic_plus(n / 2, {}, p);
    // J_n for odd n is kH + <1>.
    return hyperbolic_plus(n / 2, {{0, 0, p}}, p);
}

std::string to_string(OrthType t) {
    switch (t) {
        case OrthType::Split: return "split";
        case OrthType::QuasiSplit: return "quasi-split";
        case OrthType::NonQuasiSplit: return "non-quasi-split";
    }
    return "?";
}

OrthType orthogonal_type(int n, const Invariants& inv, int p) {
    const auto real = realizable_invariants(n, p);
    if (std::find(real.begin(), real.end(), inv) == real.end())
        throw BadTarget("(disc, Hasse) not realized in dimension " + std::to_string(n));
    if (n == 1) return OrthType::Split;
    const auto classes = all_classes(p);
    const int k = n / 2;
    if (n % 2 == 1) {
        for (const auto& c : classes)
            if (hyperbolic_plus(k, {c}, p) == inv) return OrthType::Split;
        return OrthType::NonQuasiSplit;
    }
    if (hyperbolic_plus(k, {}, p) == inv) return OrthType::Split;
    for (const auto& a : classes)
        for (const auto& b : classes)
            if (hyperbolic_plus(k - 1, {a, b}, p) == inv) return OrthType::QuasiSplit;
    return OrthType::NonQuasiSplit;
}

std::vector<Quintuple> apartment_classes(int n, const Invariants& target, int p) {
    check_prime(p);
    if (n < 1) throw BadParams("n must be >= 1");
    std::vector<Quintuple> out;
    for (int r = 0; 2 * r <= n; ++r) {
        const int m = n - 2 * r;
        for (int a = 0; a <= m; ++a)
            for (int b = 0; a + b <= m; ++b)
                for (int c = 0; a + b + c <= m; ++c) {
                    Quintuple t{a, b, c, m - a - b - c, r};
                    if (invariants(delta_form(t, p)) == target) out.push_back(t);
                }
    }
    return out;
}

std::vector<ThetaClass> theta_equiv_classes(int n, const Invariants& target, int p) {
    if (n < 3) throw SmallN("theta-equivalence classes need n >= 3; n=" + std::to_string(n) + " is exceptional");
    std::set<ThetaClass> s;
    for (const auto& t : apartment_classes(n, target, p)) s.insert({t.n1(), t.n2(), t.r});
    return {s.begin(), s.end()};
}

int closed_form_dimension(int n, OrthType t, Subgroup h) {
    if (n == 1) return 1;
    if (n == 2) return t == OrthType::Split ? (h == Subgroup::SO ? 4 : 3) : 1;
    const int k = n / 2;
    if (n % 2 == 0) {
        switch (t) {
            case OrthType::Split: return (k + 1) * (k + 2) / 2;
            case OrthType::QuasiSplit: return k * (k + 1) / 2;
            case OrthType::NonQuasiSplit: return (k - 1) * k / 2;
        }
    }
    return t == OrthType::Split ? (k + 1) * (k + 2) / 2 : k * (k + 1) / 2;
}

int distinction_dimension(int n, const Invariants& target, Subgroup h, int p) {
    const OrthType t = orthogonal_type(n, target, p);
    if (n == 1) return 1;
    if (n == 2) return closed_form_dimension(2, t, h);
    return int(theta_equiv_classes(n, target, p).size());
}

int sum_over_classes(int n, int p) {
    int s = 0;
    for (const auto& inv : realizable_invariants(n, p)) s += distinction_dimension(n, inv, Subgroup::O, p);
    return s;
}

int epsilon_G(int n, long long det_valuation) {
    const long long e = (static_cast<long long>(n) + 1) * det_valuation;
    return (e % 2 == 0) ? 1 : -1;
}

}  // namespace steinberg::padic
