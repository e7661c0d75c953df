#include "steinberg/ffalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace steinberg::ffalg {

namespace {

using Poly = std::vector<int>;  // little-endian coefficients mod p

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b, int p) {
    trim(a);
    const int db = int(b.size()) - 1;
    while (int(a.size()) - 1 >= db) {
        const int shift = int(a.size()) - 1 - db;
        const int c = a.back();
        for (int i = 0; i <= db; ++i) {
            a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

Poly digits(long long v, int p, int k) {
    Poly c(k, 0);
    for (int i = 0; i < k; ++i) {
        c[i] = int(v % p);
        v /= p;
    }
    return c;
}

long long undigits(const Poly& c, int p) {
    long long v = 0;
    for (int i = int(c.size()) - 1; i >= 0; --i) v = v * p + c[i];
    return v;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 r = (unsigned __int128)a * b;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t(r);
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r = sat_mul(r, b);
    return r;
}

// q^a - s for s in {-1, +1}, with q^a large enough that this never underflows.
std::uint64_t pow_pm(std::uint64_t q, int a, int s) {
    std::uint64_t v = ipow(q, a);
    if (v == std::numeric_limits<std::uint64_t>::max()) return v;
    return s > 0 ? v - 1 : v + 1;
}

}  // namespace

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<int, int> prime_power(long long q) {
    if (q < 3) throw BadField("q=" + std::to_string(q) + " is not an odd prime power");
    long long p = 2;
    while (q % p != 0) ++p;
    long long v = q;
    int k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    if (v != 1 || p == 2) throw BadField("q=" + std::to_string(q) + " is not an odd prime power");
    return {int(p), k};
}

std::vector<int> least_irreducible(int p, int k) {
    if (k == 1) return {0, 1};
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long long c = 0; c < count; ++c) {
        Poly f = digits(c, p, k);
        f.push_back(1);
        if (f[0] == 0) continue;
        bool irreducible = true;
        for (int d = 1; d <= k / 2 && irreducible; ++d) {
            long long m = 1;
            for (int i = 0; i < d; ++i) m *= p;
            for (long long g = 0; g < m; ++g) {
                Poly h = digits(g, p, d);
                h.push_back(1);
                if (poly_mod(f, h, p).empty()) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

FiniteField::FiniteField(int p, int k) : p_(p), k_(k) {
    if (!is_prime(p) || p == 2 || k < 1) throw BadField("need an odd prime p and k >= 1");
    long long q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    if (q > kMaxOrder) throw BadField("q=" + std::to_string(q) + " exceeds the supported maximum");
    q_ = int(q);
    modulus_ = least_irreducible(p, k);

    add_.resize(std::size_t(q_) * q_);
    neg_.resize(q_);
    for (int a = 0; a < q_; ++a) {
        Poly da = digits(a, p, k);
        Poly dn(k);
        for (int i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
        neg_[a] = Elt(undigits(dn, p));
        for (int b = 0; b < q_; ++b) {
            Poly db = digits(b, p, k);
            Poly s(k);
            for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
            add_[std::size_t(a) * q_ + b] = Elt(undigits(s, p));
        }
    }

    auto pmul = [&](int a, int b) {
        Poly da = digits(a, p, k), db = digits(b, p, k);
        Poly r(2 * k, 0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) r[i + j] = (r[i + j] + da[i] * db[j]) % p;
        r = poly_mod(r, modulus_, p);
        r.resize(k, 0);
        return int(undigits(r, p));
    };

    int gen = -1;
    for (int g = 1; g < q_ && gen < 0; ++g) {
        int x = g, order = 1;
        while (x != 1) {
            x = pmul(x, g);
            ++order;
        }
        if (order == q_ - 1) gen = g;
    }
    exp_.resize(2 * std::size_t(q_));
    log_.assign(q_, -1);
    int x = 1;
    for (int i = 0; i < 2 * q_; ++i) {
        exp_[i] = Elt(x);
        if (i < q_ - 1) log_[x] = i;
        x = pmul(x, gen);
    }

    frob_.resize(k_);
    for (int j = 0; j < k_; ++j) {
        frob_[j].resize(q_);
        long long e = 1;
        for (int i = 0; i < j; ++i) e *= p_;
        for (int a = 0; a < q_; ++a) frob_[j][a] = pow(Elt(a), e);
    }
}

Elt FiniteField::inv(Elt a) const {
    if (a == 0) throw BadParams("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elt FiniteField::pow(Elt a, long long e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    long long m = q_ - 1;
    long long r = ((log_[a] * (e % m)) % m + m) % m;
    return exp_[r];
}

Elt FiniteField::frob(Elt a, int j) const {
    j = ((j % k_) + k_) % k_;
    if (frob_.empty()) return pow(a, 1);
    return frob_[j][a];
}

Elt FiniteField::from_int(long long n) const {
    long long r = ((n % p_) + p_) % p_;
    return Elt(r);
}

std::vector<int> FiniteField::coeffs(Elt a) const { return digits(a, p_, k_); }

Elt FiniteField::from_coeffs(const std::vector<int>& c) const {
    if (int(c.size()) > k_) throw BadParams("too many coefficients");
    Poly d(k_, 0);
    for (std::size_t i = 0; i < c.size(); ++i) d[i] = ((c[i] % p_) + p_) % p_;
    return Elt(undigits(d, p_));
}

int FiniteField::log(Elt a) const {
    if (a == 0) throw BadParams("log of zero");
    return log_[a];
}

int FiniteField::legendre(Elt a) const {
    if (a == 0) return 0;
    return log_[a] % 2 == 0 ? 1 : -1;
}

std::vector<Elt> FiniteField::fixed_subfield(int j) const {
    std::vector<Elt> out;
    for (int a = 0; a < q_; ++a)
        if (frob(Elt(a), j) == a) out.push_back(Elt(a));
    return out;
}

std::string FiniteField::to_string(Elt a) const {
    if (k_ == 1) return std::to_string(a);
    std::ostringstream os;
    os << '[';
    auto c = coeffs(a);
    for (int i = 0; i < k_; ++i) os << (i ? "," : "") << c[i];
    os << ']';
    return os.str();
}

FieldPtr field(int q) {
    static std::mutex mu;
    static std::map<int, FieldPtr> cache;
    auto [p, k] = prime_power(q);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto F = std::make_shared<const FiniteField>(p, k);
    cache.emplace(q, F);
    return F;
}

// ---- matrices ----

std::size_t MatHash::operator()(const Mat& m) const noexcept {
    std::size_t h = std::size_t(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) h = h * 1315423911u + m(i, j) + 0x9e3779b9u;
    return h;
}

Mat identity(int n) {
    Mat m;
    m.n = n;
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat diag(const std::vector<Elt>& d) {
    Mat m;
    m.n = int(d.size());
    for (int i = 0; i < m.n; ++i) m(i, i) = d[i];
    return m;
}

Mat from_rows(const std::vector<std::vector<Elt>>& rows) {
    Mat m;
    m.n = int(rows.size());
    if (m.n > 4) throw BadParams("matrix dimension above 4");
    for (int i = 0; i < m.n; ++i) {
        if (int(rows[i].size()) != m.n) throw BadParams("matrix is not square");
        for (int j = 0; j < m.n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Mat mul(const FiniteField& F, const Mat& A, const Mat& B) {
    Mat C;
    C.n = A.n;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            Elt s = 0;
            for (int l = 0; l < A.n; ++l) s = F.add(s, F.mul(A(i, l), B(l, j)));
            C(i, j) = s;
        }
    return C;
}

Mat transpose(const Mat& A) {
    Mat T;
    T.n = A.n;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) T(i, j) = A(j, i);
    return T;
}

Mat frob(const FiniteField& F, const Mat& A, int j) {
    Mat B;
    B.n = A.n;
    for (int i = 0; i < A.n; ++i)
        for (int l = 0; l < A.n; ++l) B(i, l) = F.frob(A(i, l), j);
    return B;
}

Mat scale(const FiniteField& F, Elt c, const Mat& A) {
    Mat B;
    B.n = A.n;
    for (int i = 0; i < A.n; ++i)
        for (int l = 0; l < A.n; ++l) B(i, l) = F.mul(c, A(i, l));
    return B;
}

Elt det(const FiniteField& F, const Mat& A) {
    Mat M = A;
    const int n = A.n;
    Elt d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (M(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(M(piv, j), M(c, j));
            d = F.neg(d);
        }
        d = F.mul(d, M(c, c));
        Elt iv = F.inv(M(c, c));
        for (int r = c + 1; r < n; ++r) {
            if (M(r, c) == 0) continue;
            Elt f = F.mul(M(r, c), iv);
            for (int j = c; j < n; ++j) M(r, j) = F.sub(M(r, j), F.mul(f, M(c, j)));
        }
    }
    return d;
}

Mat inverse(const FiniteField& F, const Mat& A) {
    const int n = A.n;
    Mat M = A, I = identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (M(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw BadParams("singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(M(piv, j), M(c, j));
            std::swap(I(piv, j), I(c, j));
        }
        Elt iv = F.inv(M(c, c));
        for (int j = 0; j < n; ++j) {
            M(c, j) = F.mul(M(c, j), iv);
            I(c, j) = F.mul(I(c, j), iv);
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || M(r, c) == 0) continue;
            Elt f = M(r, c);
            for (int j = 0; j < n; ++j) {
                M(r, j) = F.sub(M(r, j), F.mul(f, M(c, j)));
                I(r, j) = F.sub(I(r, j), F.mul(f, I(c, j)));
            }
        }
    }
    return I;
}

Mat antidiagonal(int n) {
    Mat m;
    m.n = n;
    for (int i = 0; i < n; ++i) m(i, n - 1 - i) = 1;
    return m;
}

std::string to_string(const FiniteField& F, const Mat& A) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < A.n; ++i) {
        os << (i ? "," : "") << '[';
        for (int j = 0; j < A.n; ++j) os << (j ? "," : "") << F.to_string(A(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

std::vector<std::vector<Elt>> rref(const FiniteField& F, std::vector<std::vector<Elt>> rows) {
    if (rows.empty()) return rows;
    const int n = int(rows[0].size());
    int r = 0;
    for (int c = 0; c < n && r < int(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < int(rows.size()); ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[r]);
        Elt iv = F.inv(rows[r][c]);
        for (auto& x : rows[r]) x = F.mul(x, iv);
        for (int i = 0; i < int(rows.size()); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Elt f = rows[i][c];
            for (int j = 0; j < n; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::vector<std::vector<Elt>> nullspace(const FiniteField& F, const std::vector<std::vector<Elt>>& rows, int n) {
    auto R = rows.empty() ? rows : rref(F, rows);
    std::vector<int> pivcol;
    for (auto& row : R) {
        int c = 0;
        while (row[c] == 0) ++c;
        pivcol.push_back(c);
    }
    std::vector<std::vector<Elt>> basis;
    for (int f = 0; f < n; ++f) {
        if (std::find(pivcol.begin(), pivcol.end(), f) != pivcol.end()) continue;
        std::vector<Elt> v(n, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < R.size(); ++i) v[pivcol[i]] = F.neg(R[i][f]);
        basis.push_back(v);
    }
    return basis;
}

std::vector<Elt> apply(const FiniteField& F, const Mat& g, const std::vector<Elt>& v) {
    std::vector<Elt> w(g.n, 0);
    for (int i = 0; i < g.n; ++i) {
        Elt s = 0;
        for (int j = 0; j < g.n; ++j) s = F.add(s, F.mul(g(i, j), v[j]));
        w[i] = s;
    }
    return w;
}

// ---- groups ----

std::string GroupSpec::name() const {
    std::ostringstream os;
    switch (kind) {
        case GroupKind::SL2: os << "SL2(F" << q << ")"; break;
        case GroupKind::SU3: os << "SU3(F" << F->q() << "/F" << q << ")"; break;
        case GroupKind::GLn: os << "GL" << n << "(F" << q << ")"; break;
        case GroupKind::SOn: os << "SO" << n << "(F" << q << "," << to_string(*F, form) << ")"; break;
        case GroupKind::Un: os << "U" << n << "(F" << F->q() << "/F" << q << "," << to_string(*F, form) << ")"; break;
    }
    return os.str();
}

GroupSpec sl2(int q) {
    GroupSpec G;
    G.kind = GroupKind::SL2;
    G.n = 2;
    G.F = field(q);
    G.q = q;
    return G;
}

GroupSpec su3(int q) {
    GroupSpec G;
    G.kind = GroupKind::SU3;
    G.n = 3;
    auto [p, k] = prime_power(q);
    (void)p;
    G.F = field(q * q);
    G.q = q;
    G.sigma_power = k;
    G.form = antidiagonal(3);
    return G;
}

GroupSpec gln(int n, int q) {
    if (n < 1 || n > 4) throw BadParams("GLn needs 1 <= n <= 4");
    GroupSpec G;
    G.kind = GroupKind::GLn;
    G.n = n;
    G.F = field(q);
    G.q = q;
    return G;
}

GroupSpec son(const Mat& eps, int q) {
    GroupSpec G;
    G.kind = GroupKind::SOn;
    G.n = eps.n;
    G.F = field(q);
    G.q = q;
    if (!(transpose(eps) == eps)) throw BadParams("orthogonal form must be symmetric");
    if (det(*G.F, eps) == 0) throw BadParams("orthogonal form must be invertible");
    G.form = eps;
    return G;
}

GroupSpec un(int n, int q) { return un(n, q, antidiagonal(n)); }

GroupSpec un(int n, int q, const Mat& form) {
    GroupSpec G;
    G.kind = GroupKind::Un;
    G.n = n;
    auto [p, k] = prime_power(q);
    (void)p;
    G.F = field(q * q);
    G.q = q;
    G.sigma_power = k;
    if (!(transpose(frob(*G.F, form, k)) == form)) throw BadParams("unitary form must be hermitian");
    if (det(*G.F, form) == 0) throw BadParams("unitary form must be invertible");
    G.form = form;
    return G;
}

bool contains(const GroupSpec& G, const Mat& g) {
    const auto& F = *G.F;
    if (g.n != G.n) return false;
    switch (G.kind) {
        case GroupKind::SL2: return det(F, g) == 1;
        case GroupKind::GLn: return det(F, g) != 0;
        case GroupKind::SOn:
            return det(F, g) == 1 && mul(F, mul(F, transpose(g), G.form), g) == G.form;
        case GroupKind::SU3:
        case GroupKind::Un: {
            Mat sg = transpose(frob(F, g, G.sigma_power));
            bool unitary = mul(F, mul(F, sg, G.form), g) == G.form;
            if (!unitary) return false;
            return G.kind == GroupKind::Un || det(F, g) == 1;
        }
    }
    return false;
}

std::uint64_t group_order(const GroupSpec& G) {
    const std::uint64_t q = std::uint64_t(G.q);
    const int n = G.n;
    switch (G.kind) {
        case GroupKind::SL2: return sat_mul(q, sat_mul(q - 1, q + 1));
        case GroupKind::SU3:
            return sat_mul(ipow(q, 3), sat_mul(q * q - 1, q * q * q + 1));
        case GroupKind::GLn: {
            std::uint64_t r = 1;
            for (int i = 0; i < n; ++i) {
                std::uint64_t qn = ipow(q, n);
                r = sat_mul(r, qn - ipow(q, i));
            }
            return r;
        }
        case GroupKind::Un: {
            std::uint64_t r = ipow(q, n * (n - 1) / 2);
            for (int i = 1; i <= n; ++i) r = sat_mul(r, pow_pm(q, i, i % 2 == 0 ? 1 : -1));
            return r;
        }
        case GroupKind::SOn: {
            if (n % 2 == 1) {
                const int m = (n - 1) / 2;
                std::uint64_t r = ipow(q, m * m);
                for (int i = 1; i <= m; ++i) r = sat_mul(r, ipow(q, 2 * i) - 1);
                return r;
            }
            const int m = n / 2;
            const auto& F = *G.F;
            Elt d = det(F, G.form);
            if (m % 2 == 1) d = F.neg(d);
            const int e = F.is_square(d) ? 1 : -1;
            std::uint64_t r = ipow(q, m * (m - 1));
            r = sat_mul(r, pow_pm(q, m, e));
            for (int i = 1; i < m; ++i) r = sat_mul(r, ipow(q, 2 * i) - 1);
            return r;
        }
    }
    return 0;
}

std::uint64_t default_cap() {
    const char* env = std::getenv("STEINBERG_KIT_CAP");
    if (env && *env) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end && *end == '\0' && v >= 1 && v < 1.8e19) return std::uint64_t(v);
    }
    return 10'000'000ULL;
}

namespace {

// Elements of G that are upper unitriangular, diagonal, and one Weyl
// representative with antidiagonal support; used for the Bruhat enumeration.
struct BruhatParts {
    std::vector<Mat> U, T;
    Mat w;
};

BruhatParts bruhat_parts(const GroupSpec& G) {
    const auto& F = *G.F;
    const int n = G.n;
    const int qf = F.q();
    BruhatParts parts;
    std::vector<std::pair<int, int>> upper;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) upper.emplace_back(i, j);
    std::vector<int> idx(upper.size(), 0);
    while (true) {
        Mat u = identity(n);
        for (std::size_t t = 0; t < upper.size(); ++t) u(upper[t].first, upper[t].second) = Elt(idx[t]);
        if (contains(G, u)) parts.U.push_back(u);
        std::size_t t = 0;
        while (t < idx.size() && ++idx[t] == qf) idx[t++] = 0;
        if (t == idx.size()) break;
    }
    std::vector<int> d(n - 1, 1);
    while (true) {
        std::vector<Elt> dd(n);
        Elt prod = 1;
        for (int i = 0; i < n - 1; ++i) {
            dd[i] = Elt(d[i]);
            prod = F.mul(prod, dd[i]);
        }
        dd[n - 1] = F.inv(prod);
        Mat t = diag(dd);
        if (contains(G, t)) parts.T.push_back(t);
        int i = 0;
        while (i < n - 1 && ++d[i] == qf) d[i++] = 1;
        if (i == n - 1) break;
    }
    std::vector<int> a(n, 1);
    bool found = false;
    while (!found) {
        Mat w;
        w.n = n;
        for (int i = 0; i < n; ++i) w(i, n - 1 - i) = Elt(a[i]);
        if (contains(G, w)) {
            parts.w = w;
            found = true;
            break;
        }
        int i = 0;
        while (i < n && ++a[i] == qf) a[i++] = 1;
        if (i == n) break;
    }
    if (!found) throw std::logic_error("no Weyl representative found");
    return parts;
}

void enumerate_gl(const FiniteField& F, int n, const std::function<void(const Mat&)>& fn) {
    const int q = F.q();
    long long nvec = 1;
    for (int i = 0; i < n; ++i) nvec *= q;
    std::vector<std::vector<Elt>> vecs(nvec);
    for (long long v = 0; v < nvec; ++v) {
        vecs[v].resize(n);
        long long x = v;
        for (int i = 0; i < n; ++i) {
            vecs[v][i] = Elt(x % q);
            x /= q;
        }
    }
    Mat g;
    g.n = n;
    std::function<void(int, const std::vector<std::vector<Elt>>&)> rec =
        [&](int row, const std::vector<std::vector<Elt>>& basis) {
            if (row == n) {
                fn(g);
                return;
            }
            for (long long v = 0; v < nvec; ++v) {
                auto rows = basis;
                rows.push_back(vecs[v]);
                auto R = rref(F, rows);
                if (int(R.size()) != row + 1) continue;
                for (int j = 0; j < n; ++j) g(row, j) = vecs[v][j];
                rec(row + 1, R);
            }
        };
    rec(0, {});
}

}  // namespace

void for_each_element(const GroupSpec& G, const std::function<void(const Mat&)>& fn, std::uint64_t cap) {
    const std::uint64_t order = group_order(G);
    if (order > cap)
        throw CapExceeded(G.name() + " has order " + std::to_string(order) + " above cap " + std::to_string(cap));
    const auto& F = *G.F;
    std::uint64_t count = 0;
    auto counted = [&](const Mat& g) {
        ++count;
        fn(g);
    };
    switch (G.kind) {
        case GroupKind::SL2:
        case GroupKind::SU3: {
            auto parts = bruhat_parts(G);
            std::vector<Mat> B;
            B.reserve(parts.T.size() * parts.U.size());
            for (const auto& t : parts.T)
                for (const auto& u : parts.U) B.push_back(mul(F, t, u));
            for (const auto& b : B) counted(b);
            for (const auto& u : parts.U) {
                Mat uw = mul(F, u, parts.w);
                for (const auto& b : B) counted(mul(F, uw, b));
            }
            break;
        }
        case GroupKind::GLn: enumerate_gl(F, G.n, counted); break;
        case GroupKind::SOn:
        case GroupKind::Un: {
            GroupSpec amb = gln(G.n, F.q());
            amb.F = G.F;
            if (group_order(amb) > cap)
                throw CapExceeded("ambient GL" + std::to_string(G.n) + "(F" + std::to_string(F.q()) +
                                  ") scan exceeds cap " + std::to_string(cap));
            enumerate_gl(F, G.n, [&](const Mat& g) {
                if (contains(G, g)) counted(g);
            });
            break;
        }
    }
    if (count != order)
        throw std::logic_error(G.name() + ": enumerated " + std::to_string(count) + " elements, expected " +
                               std::to_string(order));
}

std::vector<Mat> enumerate_group(const GroupSpec& G, std::uint64_t cap) {
    std::vector<Mat> out;
    out.reserve(std::size_t(std::min<std::uint64_t>(group_order(G), cap)));
    for_each_element(G, [&](const Mat& g) { out.push_back(g); }, cap);
    return out;
}

// ---- Borel points ----

bool BorelPoint::operator<(const BorelPoint& o) const {
    if (n != o.n) return n < o.n;
    if (dims != o.dims) return dims < o.dims;
    return data < o.data;
}

std::vector<std::vector<Elt>> BorelPoint::space(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t s = 0; s < i; ++s) off += std::size_t(dims[s]) * n;
    std::vector<std::vector<Elt>> rows(dims[i], std::vector<Elt>(n));
    for (int r = 0; r < dims[i]; ++r)
        for (int c = 0; c < n; ++c) rows[r][c] = data[off + std::size_t(r) * n + c];
    return rows;
}

BorelPoint BorelPoint::from_spaces(const FiniteField& F, int n,
                                   const std::vector<std::vector<std::vector<Elt>>>& spaces) {
    BorelPoint b;
    b.n = n;
    for (const auto& s : spaces) {
        auto R = rref(F, s);
        b.dims.push_back(int(R.size()));
        for (const auto& row : R) b.data.insert(b.data.end(), row.begin(), row.end());
    }
    return b;
}

std::size_t BorelHash::operator()(const BorelPoint& b) const noexcept {
    std::size_t h = std::size_t(b.n) * 31 + b.dims.size();
    for (int d : b.dims) h = h * 131 + std::size_t(d);
    for (Elt e : b.data) h = h * 1315423911u + e + 0x9e3779b9u;
    return h;
}

std::string to_string(const FiniteField& F, const BorelPoint& b) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < b.dims.size(); ++i) {
        os << (i ? " < " : "") << '<';
        auto rows = b.space(i);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            os << (r ? "; " : "");
            for (int c = 0; c < b.n; ++c) os << (c ? ":" : "") << F.to_string(rows[r][c]);
        }
        os << '>';
    }
    os << ')';
    return os.str();
}

std::uint64_t borel_count(const GroupSpec& G) {
    const std::uint64_t q = std::uint64_t(G.q);
    switch (G.kind) {
        case GroupKind::SL2: return q + 1;
        case GroupKind::SU3: return q * q * q + 1;
        case GroupKind::GLn: {
            std::uint64_t r = 1;
            for (int i = 1; i < G.n; ++i) r = sat_mul(r, (ipow(q, i + 1) - 1) / (q - 1));
            return r;
        }
        default: throw Unsupported("Borel points of " + G.name() + " are not implemented");
    }
}

namespace {

std::vector<std::vector<Elt>> all_lines(const FiniteField& F, int n) {
    std::vector<std::vector<Elt>> out;
    const int q = F.q();
    for (int lead = 0; lead < n; ++lead) {
        const int free = n - lead - 1;
        long long cnt = 1;
        for (int i = 0; i < free; ++i) cnt *= q;
        for (long long c = 0; c < cnt; ++c) {
            std::vector<Elt> v(n, 0);
            v[lead] = 1;
            long long x = c;
            for (int i = lead + 1; i < n; ++i) {
                v[i] = Elt(x % q);
                x /= q;
            }
            out.push_back(v);
        }
    }
    return out;
}

Elt hermitian(const FiniteField& F, int sp, const Mat& J, const std::vector<Elt>& x, const std::vector<Elt>& y) {
    Elt s = 0;
    for (int i = 0; i < J.n; ++i)
        for (int j = 0; j < J.n; ++j)
            if (J(i, j) != 0) s = F.add(s, F.mul(F.frob(x[i], sp), F.mul(J(i, j), y[j])));
    return s;
}

}  // namespace

std::vector<BorelPoint> enumerate_borels(const GroupSpec& G, std::uint64_t cap) {
    const std::uint64_t expected = borel_count(G);
    if (expected > cap) throw CapExceeded(G.name() + " has too many Borel points");
    const auto& F = *G.F;
    std::vector<BorelPoint> out;
    switch (G.kind) {
        case GroupKind::SL2:
            for (auto& v : all_lines(F, 2)) out.push_back(BorelPoint::from_spaces(F, 2, {{v}}));
            break;
        case GroupKind::SU3:
            for (auto& v : all_lines(F, 3))
                if (hermitian(F, G.sigma_power, G.form, v, v) == 0)
                    out.push_back(BorelPoint::from_spaces(F, 3, {{v}}));
            break;
        case GroupKind::GLn: {
            const int n = G.n;
            auto lines = all_lines(F, n);
            std::vector<std::vector<std::vector<std::vector<Elt>>>> partial;
            for (auto& v : lines) partial.push_back({{v}});
            for (int d = 1; d < n - 1; ++d) {
                std::vector<std::vector<std::vector<std::vector<Elt>>>> next;
                for (auto& flag : partial) {
                    std::set<std::vector<std::vector<Elt>>> seen;
                    for (auto& v : lines) {
                        auto rows = flag.back();
                        rows.push_back(v);
                        auto R = rref(F, rows);
                        if (int(R.size()) != d + 1 || !seen.insert(R).second) continue;
                        auto f2 = flag;
                        f2.push_back(R);
                        next.push_back(std::move(f2));
                    }
                }
                partial = std::move(next);
            }
            for (auto& flag : partial) out.push_back(BorelPoint::from_spaces(F, n, flag));
            if (n == 1) out.push_back(BorelPoint{1, {}, {}});
            break;
        }
        default: throw Unsupported("Borel points of " + G.name() + " are not implemented");
    }
    std::sort(out.begin(), out.end());
    if (out.size() != expected)
        throw std::logic_error(G.name() + ": found " + std::to_string(out.size()) + " Borel points");
    return out;
}

BorelPoint act(const FiniteField& F, const Mat& g, const BorelPoint& b) {
    BorelPoint r;
    r.n = b.n;
    r.dims = b.dims;
    r.data.reserve(b.data.size());
    for (std::size_t i = 0; i < b.dims.size(); ++i) {
        auto rows = b.space(i);
        for (auto& row : rows) row = apply(F, g, row);
        auto R = rref(F, rows);
        for (const auto& row : R) r.data.insert(r.data.end(), row.begin(), row.end());
    }
    return r;
}

BorelPoint act_on_borel(const GroupSpec& G, const Mat& g, const BorelPoint& b) {
    if (!contains(G, g)) throw NotInGroup(to_string(*G.F, g) + " is not in " + G.name());
    if (b.n != G.n) throw BadParams("Borel point has the wrong dimension");
    return act(*G.F, g, b);
}

namespace {

BorelPoint coordinate_flag(const GroupSpec& G, bool opposite) {
    const auto& F = *G.F;
    const int n = G.n;
    const int depth = (G.kind == GroupKind::GLn) ? n - 1 : 1;
    std::vector<std::vector<std::vector<Elt>>> spaces;
    std::vector<std::vector<Elt>> rows;
    for (int d = 0; d < depth; ++d) {
        std::vector<Elt> e(n, 0);
        e[opposite ? n - 1 - d : d] = 1;
        rows.push_back(e);
        spaces.push_back(rows);
    }
    return BorelPoint::from_spaces(F, n, spaces);
}

}  // namespace

BorelPoint standard_borel(const GroupSpec& G) { return coordinate_flag(G, false); }
BorelPoint opposite_borel(const GroupSpec& G) { return coordinate_flag(G, true); }

namespace {

std::string cache_key(const GroupSpec& G, std::uint64_t cap) { return G.name() + "#" + std::to_string(cap); }

std::shared_ptr<const GroupData> build_group_data(const GroupSpec& G, std::uint64_t cap) {
    auto data = std::make_shared<GroupData>();
    data->spec = G;
    const auto& F = *G.F;
    data->borels = enumerate_borels(G, cap);
    for (std::size_t i = 0; i < data->borels.size(); ++i) data->index.emplace(data->borels[i], int(i));
    data->x0 = data->index.at(standard_borel(G));
    data->x0_opposite = data->index.at(opposite_borel(G));
    data->transporter.assign(data->borels.size(), Mat{});
    std::vector<bool> have(data->borels.size(), false);

    if (G.kind == GroupKind::GLn) {
        const int n = G.n;
        const int q = F.q();
        std::vector<std::pair<int, int>> upper;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) upper.emplace_back(i, j);
        std::vector<int> d(n, 1), u(upper.size(), 0);
        while (true) {
            Mat b = identity(n);
            for (int i = 0; i < n; ++i) b(i, i) = Elt(d[i]);
            for (std::size_t t = 0; t < upper.size(); ++t) b(upper[t].first, upper[t].second) = Elt(u[t]);
            data->borel_subgroup.push_back(b);
            std::size_t t = 0;
            while (t < u.size() && ++u[t] == q) u[t++] = 0;
            if (t < u.size()) continue;
            int i = 0;
            while (i < n && ++d[i] == q) d[i++] = 1;
            if (i == n) break;
        }
        for (std::size_t k = 0; k < data->borels.size(); ++k) {
            const auto& x = data->borels[k];
            std::vector<std::vector<Elt>> cols;
            for (std::size_t s = 0; s < x.dims.size(); ++s) {
                for (auto& row : x.space(s)) {
                    auto trial = cols;
                    trial.push_back(row);
                    if (rref(F, trial).size() == trial.size()) {
                        cols.push_back(row);
                        break;
                    }
                }
            }
            for (int e = 0; e < n && int(cols.size()) < n; ++e) {
                std::vector<Elt> v(n, 0);
                v[e] = 1;
                auto trial = cols;
                trial.push_back(v);
                if (rref(F, trial).size() == trial.size()) cols.push_back(v);
            }
            Mat g;
            g.n = n;
            for (int c = 0; c < n; ++c)
                for (int r = 0; r < n; ++r) g(r, c) = cols[c][r];
            data->transporter[k] = g;
            have[k] = true;
        }
    } else if (G.kind == GroupKind::SL2 || G.kind == GroupKind::SU3) {
        auto parts = bruhat_parts(G);
        for (const auto& t : parts.T)
            for (const auto& u : parts.U) data->borel_subgroup.push_back(mul(F, t, u));
        const auto& x0 = data->borels[data->x0];
        data->transporter[data->x0] = identity(G.n);
        have[data->x0] = true;
        for (const auto& u : parts.U) {
            Mat g = mul(F, u, parts.w);
            int k = data->index.at(act(F, g, x0));
            if (!have[k]) {
                data->transporter[k] = g;
                have[k] = true;
            }
        }
    } else {
        throw Unsupported("Borel points of " + G.name() + " are not implemented");
    }
    for (std::size_t k = 0; k < have.size(); ++k) {
        if (!have[k]) throw std::logic_error("transporter missing for a Borel point");
    }
    const auto& opp = data->borels[data->x0_opposite];
    for (const auto& b : data->borel_subgroup)
        if (act(F, b, opp) == opp) ++data->torus_order;
    return data;
}

}  // namespace

std::shared_ptr<const GroupData> group_data(const GroupSpec& G, std::uint64_t cap) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const GroupData>> cache;
    const auto key = cache_key(G, cap);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto data = build_group_data(G, cap);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, data);
    return data;
}

std::shared_ptr<const std::vector<Mat>> group_elements(const GroupSpec& G, std::uint64_t cap) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const std::vector<Mat>>> cache;
    const auto key = cache_key(G, cap);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto elems = std::make_shared<const std::vector<Mat>>(enumerate_group(G, cap));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, elems);
    return elems;
}

}  // namespace steinberg::ffalg
