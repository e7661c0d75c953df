#include "steinberg/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace steinberg::coxeter {

AffineMap AffineMap::identity(int d) {
    AffineMap a;
    a.d = d;
    a.m.assign(std::size_t(d) * d, 0);
    a.t.assign(d, 0);
    for (int i = 0; i < d; ++i) a.m[std::size_t(i) * d + i] = 1;
    return a;
}

AffineMap AffineMap::compose(const AffineMap& o) const {
    AffineMap r;
    r.d = d;
    r.m.assign(std::size_t(d) * d, 0);
    r.t = t;
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const std::int64_t a = m[std::size_t(i) * d + k];
            if (!a) continue;
            for (int j = 0; j < d; ++j) r.m[std::size_t(i) * d + j] += a * o.m[std::size_t(k) * d + j];
            r.t[i] += a * o.t[k];
        }
    return r;
}

AffineMap AffineMap::inverse() const {
    // M orthogonal: inverse is x -> M^T x - M^T t.
    AffineMap r;
    r.d = d;
    r.m.assign(std::size_t(d) * d, 0);
    r.t.assign(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r.m[std::size_t(i) * d + j] = m[std::size_t(j) * d + i];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r.t[i] -= r.m[std::size_t(i) * d + j] * t[j];
    return r;
}

std::vector<std::int64_t> AffineMap::operator()(const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> y = t;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) y[i] += m[std::size_t(i) * d + j] * x[j];
    return y;
}

std::size_t AffineMapHash::operator()(const AffineMap& a) const noexcept {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](std::int64_t v) { h = (h ^ std::size_t(v)) * 1099511628211ull; };
    for (auto v : a.m) mix(v);
    for (auto v : a.t) mix(v);
    return h;
}

namespace {

using Vec = std::vector<std::int64_t>;

// x -> x - (<x, alpha> - level) alpha_check
AffineMap reflection(const Vec& alpha, const Vec& coroot, std::int64_t level) {
    const int d = int(alpha.size());
    AffineMap a = AffineMap::identity(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a.m[std::size_t(i) * d + j] -= coroot[i] * alpha[j];
        a.t[i] = level * coroot[i];
    }
    return a;
}

Vec unit(int d, int i, std::int64_t c = 1) {
    Vec v(d, 0);
    v[i] = c;
    return v;
}

Vec plus(Vec a, const Vec& b, std::int64_t c = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
    return a;
}

constexpr std::int64_t kLevel = 2;

}  // namespace

int realized_order(const CoxeterSystem& sys, int i, int j) {
    const AffineMap st = sys.gens[i].compose(sys.gens[j]);
    AffineMap p = st;
    const AffineMap id = AffineMap::identity(st.d);
    for (int k = 1; k <= 6; ++k) {
        if (p == id) return k;
        p = p.compose(st);
    }
    return 0;
}

CoxeterSystem build_system(Family f, int r) {
    CoxeterSystem sys;
    sys.family = f;
    sys.rank = r;
    switch (f) {
        case Family::A: {
            if (r < 1) throw UnsupportedType("affine A needs rank >= 1");
            const int d = r + 1;
            Vec theta = plus(unit(d, 0), unit(d, d - 1), -1);
            sys.gens.push_back(reflection(theta, theta, kLevel));
            for (int i = 0; i < r; ++i) {
                Vec a = plus(unit(d, i), unit(d, i + 1), -1);
                sys.gens.push_back(reflection(a, a, 0));
            }
            sys.name = "A" + std::to_string(r);
            break;
        }
        case Family::B: {
            if (r < 3) throw UnsupportedType("affine B needs rank >= 3");
            const int d = r;
            Vec theta = plus(unit(d, 0), unit(d, 1));
            sys.gens.push_back(reflection(theta, theta, kLevel));
            for (int i = 0; i + 1 < r; ++i) {
                Vec a = plus(unit(d, i), unit(d, i + 1), -1);
                sys.gens.push_back(reflection(a, a, 0));
            }
            sys.gens.push_back(reflection(unit(d, r - 1), unit(d, r - 1, 2), 0));
            sys.name = "B" + std::to_string(r);
            break;
        }
        case Family::C: {
            if (r < 1) throw UnsupportedType("affine C needs rank >= 1");
            const int d = r;
            sys.gens.push_back(reflection(unit(d, 0, 2), unit(d, 0), kLevel));
            for (int i = 0; i + 1 < r; ++i) {
                Vec a = plus(unit(d, i), unit(d, i + 1), -1);
                sys.gens.push_back(reflection(a, a, 0));
            }
            sys.gens.push_back(reflection(unit(d, r - 1, 2), unit(d, r - 1), 0));
            sys.name = "CB" + std::to_string(r);
            break;
        }
        case Family::D: {
            if (r < 4) throw UnsupportedType("affine D needs rank >= 4");
            const int d = r;
            Vec theta = plus(unit(d, 0), unit(d, 1));
            sys.gens.push_back(reflection(theta, theta, kLevel));
            for (int i = 0; i + 1 < r; ++i) {
                Vec a = plus(unit(d, i), unit(d, i + 1), -1);
                sys.gens.push_back(reflection(a, a, 0));
            }
            Vec last = plus(unit(d, r - 2), unit(d, r - 1));
            sys.gens.push_back(reflection(last, last, 0));
            sys.name = "D" + std::to_string(r);
            break;
        }
    }
    const int n = sys.size();
    sys.m.assign(n, std::vector<int>(n, 1));
    for (int i = 0; i < n; ++i) {
        if (!(sys.gens[i].compose(sys.gens[i]) == AffineMap::identity(sys.gens[i].d)))
            throw std::logic_error("generator is not an involution");
        for (int j = i + 1; j < n; ++j) sys.m[i][j] = sys.m[j][i] = realized_order(sys, i, j);
    }
    return sys;
}

CoxeterSystem build_system(const std::string& type) {
    std::string s;
    for (char c : type) s += char(std::toupper(static_cast<unsigned char>(c)));
    Family f;
    std::size_t pos = 1;
    if (s.rfind("CB", 0) == 0) {
        f = Family::C;
        pos = 2;
    } else if (!s.empty() && s[0] == 'A') {
        f = Family::A;
    } else if (!s.empty() && s[0] == 'B') {
        f = Family::B;
    } else if (!s.empty() && s[0] == 'C') {
        f = Family::C;
    } else if (!s.empty() && s[0] == 'D') {
        f = Family::D;
    } else {
        throw UnsupportedType("unknown Coxeter type '" + type + "'");
    }
    const std::string digits = s.substr(pos);
    if (digits.empty() || digits.size() > 2 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw UnsupportedType("bad rank in Coxeter type '" + type + "'");
    return build_system(f, std::stoi(digits));
}

ShellStore::ShellStore(const CoxeterSystem& sys) : sys_(sys) {
    elems_.push_back(AffineMap::identity(sys.gens.at(0).d));
    len_.push_back(0);
    parent_.push_back(-1);
    gen_.push_back(-1);
    shells_.push_back({0});
    index_.emplace(elems_[0], 0);
}

void ShellStore::extend_to(int L) {
    while (depth() < L) {
        const int l = depth();
        std::vector<int> next;
        const std::vector<int> cur = shells_[l];
        for (int id : cur)
            for (int s = 0; s < sys_.size(); ++s) {
                AffineMap w = elems_[id].compose(sys_.gens[s]);
                if (index_.count(w)) continue;
                const int nid = int(elems_.size());
                index_.emplace(w, nid);
                elems_.push_back(std::move(w));
                len_.push_back(l + 1);
                parent_.push_back(id);
                gen_.push_back(s);
                next.push_back(nid);
            }
        shells_.push_back(std::move(next));
    }
}

std::vector<std::size_t> ShellStore::counts() const {
    std::vector<std::size_t> c;
    for (const auto& sh : shells_) c.push_back(sh.size());
    return c;
}

int ShellStore::find(const AffineMap& a) const {
    auto it = index_.find(a);
    return it == index_.end() ? -1 : it->second;
}

int ShellStore::right_mul(int id, int s) {
    extend_to(len_.at(id) + 1);
    return find(elems_[id].compose(sys_.gens.at(s)));
}

std::vector<int> ShellStore::reduced_word(int id) const {
    std::vector<int> w;
    for (int x = id; parent_.at(x) >= 0; x = parent_[x]) w.push_back(gen_[x]);
    std::reverse(w.begin(), w.end());
    return w;
}

std::vector<int> ShellStore::random_reduced_word(int id, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> w;
    int x = id;
    while (len_.at(x) > 0) {
        std::vector<std::pair<int, int>> desc;
        for (int s = 0; s < sys_.size(); ++s) {
            const int y = find(elems_[x].compose(sys_.gens[s]));
            if (y >= 0 && len_[y] < len_[x]) desc.emplace_back(s, y);
        }
        const auto& pick = desc.at(std::uniform_int_distribution<std::size_t>(0, desc.size() - 1)(rng));
        w.push_back(pick.first);
        x = pick.second;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

int ShellStore::element_of_word(const std::vector<int>& word) {
    int x = 0;
    for (int s : word) x = right_mul(x, s);
    return x;
}

std::vector<std::size_t> enumerate_shells(const CoxeterSystem& sys, int L) {
    ShellStore st(sys);
    st.extend_to(std::max(L, 0));
    return st.counts();
}

int gallery_distance(ShellStore& store, int w1, int w2) {
    const AffineMap d = store.element(w1).inverse().compose(store.element(w2));
    store.extend_to(store.length(w1) + store.length(w2));
    const int id = store.find(d);
    if (id < 0) throw std::logic_error("gallery_distance: element not reached");
    return store.length(id);
}

void validate(const CoxeterSystem& sys, const WallParams& p) {
    const int n = sys.size();
    if (int(p.m.size()) != n || int(p.eps.size()) != n)
        throw BadParams("expected " + std::to_string(n) + " wall parameters");
    for (int s = 0; s < n; ++s) {
        if (abs(p.m[s]) >= 1) throw BadParams("wall parameter m_" + std::to_string(s) + " has |m| >= 1");
        if (p.eps[s] != 1 && p.eps[s] != -1) throw BadParams("wall sign must be +1 or -1");
    }
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t)
            if (sys.m[s][t] % 2 == 1 && (p.m[s] != p.m[t] || p.eps[s] != p.eps[t]))
                throw BadParams("parameters differ across the odd bond (" + std::to_string(s) + "," +
                                std::to_string(t) + ")");
}

mpq_class word_weight(const WallParams& p, const std::vector<int>& word) {
    mpq_class w = 1;
    for (int s : word) w *= p.eps.at(s) * p.m.at(s);
    return w;
}

PoincareResult poincare_partial(ShellStore& store, const WallParams& p, int L) {
    validate(store.system(), p);
    store.extend_to(L);
    PoincareResult r;
    r.L = L;
    std::vector<mpq_class> weight(store.size());
    weight[0] = 1;
    for (int l = 0; l <= L; ++l) {
        mpq_class sum = 0;
        for (int id : store.shell(l)) {
            if (l > 0) {
                const int s = store.last_generator(id);
                weight[id] = weight[store.parent(id)] * p.eps[s] * p.m[s];
            }
            sum += weight[id];
        }
        r.shell_counts.push_back(store.shell(l).size());
        r.shell_sums.push_back(sum);
        r.partial += sum;
    }
    return r;
}

PoincareResult poincare_partial(const CoxeterSystem& sys, const WallParams& p, int L) {
    ShellStore st(sys);
    return poincare_partial(st, p, L);
}

PoincareResult poincare_until(const CoxeterSystem& sys, const WallParams& p, double tol, int max_L) {
    if (!(tol > 0 && tol < 1)) throw BadParams("tolerance must lie in (0,1)");
    validate(sys, p);
    ShellStore st(sys);
    PoincareResult r;
    std::vector<mpq_class> weight(1, 1);
    const mpq_class qtol(tol);
    int small = 0;
    for (int l = 0; l <= max_L; ++l) {
        st.extend_to(l);
        weight.resize(st.size());
        mpq_class sum = 0;
        for (int id : st.shell(l)) {
            if (l > 0) {
                const int s = st.last_generator(id);
                weight[id] = weight[st.parent(id)] * p.eps[s] * p.m[s];
            }
            sum += weight[id];
        }
        r.L = l;
        r.shell_counts.push_back(st.shell(l).size());
        r.shell_sums.push_back(sum);
        r.partial += sum;
        if (l > 0 && abs(sum) < qtol * abs(r.partial)) {
            if (++small == 3) break;
        } else {
            small = 0;
        }
    }
    return r;
}

mpq_class poincare_closed_rank1(const mpq_class& ms, const mpq_class& mt) {
    if (abs(ms) >= 1 || abs(mt) >= 1) throw BadParams("closed form needs |m_s|, |m_t| < 1");
    mpq_class r = (1 + ms) * (1 + mt) / (1 - ms * mt);
    r.canonicalize();
    return r;
}

WallParams wall_params_gl3_so3(int q) {
    // q = 2 is accepted too: the closed form is used there as a numeric check.
    int f = 2;
    while (q >= 2 && q % f != 0) ++f;
    int v = q;
    while (q >= 2 && v % f == 0) v /= f;
    if (q < 2 || v != 1) throw BadParams("q must be a prime power");
    WallParams p;
    const mpz_class Q = q;
    p.eps = {1, 1};
    p.n_factor = {mpz_class(-Q * Q * Q), mpz_class(-Q)};
    p.Q_factor = {Q, mpz_class(1)};
    for (int s = 0; s < 2; ++s) {
        mpq_class m(*p.Q_factor[s], *p.n_factor[s]);
        m.canonicalize();
        p.m.push_back(m);
    }
    return p;
}

mpq_class gl3_so3_closed_form(int q) {
    const mpq_class Q = q;
    mpq_class r = (1 - 1 / Q) * (1 - 1 / (Q * Q)) / (1 - 1 / (Q * Q * Q));
    r.canonicalize();
    return r;
}

}  // namespace steinberg::coxeter
