// One PASS/FAIL line per acceptance criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "steinberg/coxeter.hpp"
#include "steinberg/localgraph.hpp"
#include "steinberg/padicforms.hpp"
#include "steinberg/rankone.hpp"

using namespace steinberg;
using rankone::CaseTag;

namespace {

constexpr double kSl2Seconds = 10.0;
constexpr double kSu3Seconds = 120.0;
constexpr double kPoincareSeconds = 5.0;
constexpr double kDimensionSeconds = 1.0;
constexpr double kSeriesTol = 1e-12;
constexpr int kSeriesMaxL = 200;
constexpr int kPropertyInstances = 100;
const int kPrimes[] = {3, 5, 7, 13};

using Pattern = std::vector<std::pair<std::size_t, int>>;

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail) {
    std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Pattern sorted(Pattern p) {
    std::sort(p.begin(), p.end());
    return p;
}

std::size_t isqrt(std::size_t q) {
    std::size_t s = std::size_t(std::llround(std::sqrt(double(q))));
    return s * s == q ? s : 0;
}

Pattern closed_sl2(CaseTag t, std::size_t q) {
    const std::size_t s = isqrt(q);
    switch (t) {
        case CaseTag::SL2_Ii1: return {{q + 1, 1}};
        case CaseTag::SL2_Ii2: return {{1, 1}, {1, 1}, {(q - 1) / 2, 0}, {(q - 1) / 2, 0}};
        case CaseTag::SL2_Iii: return {{s + 1, 1}, {q - s, 0}};
        case CaseTag::SL2_IIi1: return {{(q - 1) / 2, 0}, {(q - 1) / 2, 0}, {1, 1}, {1, 1}};
        case CaseTag::SL2_IIi2: return {{(q + 1) / 2, 0}, {(q + 1) / 2, 0}};
        case CaseTag::SL2_IIii: return {{q - s, 0}, {s + 1, 1}};
        default: return {};
    }
}

Pattern closed_su3(CaseTag t, std::size_t q) {
    const std::size_t c = q * q * q;
    switch (t) {
        case CaseTag::SU3_Ii1: return {{c + 1, 1}};
        case CaseTag::SU3_Ii2: return {{q + 1, 1}, {c - q, 0}};
        case CaseTag::SU3_Iii: return {{q + 1, 1}, {(c - q) / 2, 0}, {(c - q) / 2, 0}};
        case CaseTag::SU3_IIi: return {{c - q, 0}, {q + 1, 1}};
        case CaseTag::SU3_IIii: return {{(c - q) / 2, 0}, {(c - q) / 2, 0}, {q + 1, 1}};
        default: return {};
    }
}

// Sweeps every admissible parameter; returns (checked, mismatches).
std::pair<int, int> sweep_tables(const std::string& kind, const std::vector<int>& qs,
                                 const std::function<Pattern(CaseTag, std::size_t)>& closed) {
    int checked = 0, bad = 0;
    for (int q : qs)
        for (CaseTag t : rankone::cases_for(kind))
            for (const auto& params : rankone::admissible_params(t, q)) {
                auto spec = rankone::build_involution(t, q, params);
                auto table = rankone::orbit_table(spec);
                ++checked;
                if (sorted(table.pattern()) != sorted(closed(t, std::size_t(q)))) {
                    ++bad;
                    std::printf("  mismatch %s q=%d %s\n", rankone::to_string(t).c_str(), q, spec.params_string().c_str());
                }
            }
    return {checked, bad};
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    auto [checked, bad] = sweep_tables("sl2", {3, 5, 7, 9}, closed_sl2);
    const double s = seconds_since(t0);
    report(1, "SL2 orbit tables", bad == 0 && checked > 0 && s < kSl2Seconds,
           std::to_string(checked) + " parameter choices, " + std::to_string(bad) + " mismatches, " + fmt(s) +
               " s (limit " + fmt(kSl2Seconds) + " s)");
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    auto [checked, bad] = sweep_tables("su3", {3, 5}, closed_su3);
    const double s = seconds_since(t0);
    report(2, "SU3 orbit tables", bad == 0 && checked > 0 && s < kSu3Seconds,
           std::to_string(checked) + " parameter choices, " + std::to_string(bad) + " mismatches, " + fmt(s) +
               " s (limit " + fmt(kSu3Seconds) + " s)");
}

void criterion3() {
    bool ok = true;
    std::string detail = "SL2-II.i.1 shares at q =";
    for (int q : {3, 5, 7, 9, 11, 13, 25, 27}) {
        for (const auto& params : rankone::admissible_params(CaseTag::SL2_IIi1, q)) {
            auto spec = rankone::build_involution(CaseTag::SL2_IIi1, q, params);
            auto t = rankone::orbit_table(spec);
            const bool share = rankone::standard_and_opposite_share_orbit(t, *ffalg::group_data(spec.group));
            ok = ok && share == (q % 4 == 1);
            if (share && params.x == rankone::admissible_params(CaseTag::SL2_IIi1, q).front().x)
                detail += " " + std::to_string(q);
        }
    }
    for (int q : {3, 5}) {
        for (const auto& params : rankone::admissible_params(CaseTag::SU3_IIii, q)) {
            auto spec = rankone::build_involution(CaseTag::SU3_IIii, q, params);
            auto t = rankone::orbit_table(spec);
            ok = ok && rankone::standard_and_opposite_share_orbit(t, *ffalg::group_data(spec.group));
        }
    }
    report(3, "merge criteria", ok, detail + "; SU3-II.ii shares at q = 3 5");
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    auto sys = coxeter::build_system("CB1");
    bool ok = true;
    std::string detail;
    for (int q : {2, 3, 5, 7}) {
        const mpq_class Q = q;
        const mpq_class closed = (1 - 1 / Q) * (1 - 1 / (Q * Q)) / (1 - 1 / (Q * Q * Q));
        auto r = coxeter::poincare_until(sys, coxeter::wall_params_gl3_so3(q), kSeriesTol, kSeriesMaxL);
        const double err = std::fabs(mpq_class(r.partial - closed).get_d());
        const bool positive = r.partial > 0 && closed > 0;
        ok = ok && err < kSeriesTol && positive && r.L <= kSeriesMaxL;
        detail += "q=" + std::to_string(q) + " L=" + std::to_string(r.L) + " err=" + fmt(err) + "; ";
    }
    const double s = seconds_since(t0);
    ok = ok && s < kPoincareSeconds;
    report(4, "Poincare series", ok, detail + fmt(s) + " s");
}

int table_dimension(int n, padic::OrthType t, padic::Subgroup h) {
    using padic::OrthType;
    if (n == 1) return 1;
    if (n == 2 && t == OrthType::Split) return h == padic::Subgroup::SO ? 4 : 3;
    const int k = n / 2;
    if (n % 2 == 0) {
        if (t == OrthType::Split) return (k + 1) * (k + 2) / 2;
        if (t == OrthType::QuasiSplit) return k * (k + 1) / 2;
        return (k - 1) * k / 2;
    }
    return t == OrthType::Split ? (k + 1) * (k + 2) / 2 : k * (k + 1) / 2;
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    int rows = 0, bad = 0;
    const int p = 5;
    for (int n = 1; n <= 12; ++n)
        for (const auto& inv : padic::realizable_invariants(n, p)) {
            const auto t = padic::orthogonal_type(n, inv, p);
            for (auto h : {padic::Subgroup::SO, padic::Subgroup::O}) {
                ++rows;
                const int d = padic::distinction_dimension(n, inv, h, p);
                if (d != table_dimension(n, t, h) || d != padic::closed_form_dimension(n, t, h)) ++bad;
            }
        }
    const auto split2 = padic::split_invariants(2, p);
    const bool n2 = padic::distinction_dimension(2, split2, padic::Subgroup::SO, p) == 4 &&
                    padic::distinction_dimension(2, split2, padic::Subgroup::O, p) == 3;
    const double s = seconds_since(t0);
    report(5, "dimension table", bad == 0 && n2 && s < kDimensionSeconds,
           std::to_string(rows) + " rows, " + std::to_string(bad) + " mismatches, n=2 split SO/O = 4/3 " +
               (n2 ? "yes" : "no") + ", " + fmt(s) + " s");
}

void criterion6() {
    bool ok = true;
    for (int p : kPrimes)
        for (int n = 1; n <= 12; ++n) ok = ok && padic::sum_over_classes(n, p) == (n + 1) * (n + 1);
    report(6, "global sum", ok, "(n+1)^2 for n <= 12 at p = 3 5 7 13");
}

void criterion7() {
    bool five = true;
    std::string detail = "n=2 split classes:";
    for (int p : kPrimes) {
        const std::size_t c = padic::apartment_classes(2, padic::split_invariants(2, p), p).size();
        detail += " p=" + std::to_string(p) + ":" + std::to_string(c);
        if (p % 4 == 1) five = five && c == 5;
    }
    bool unique = true;
    for (int p : kPrimes)
        for (int k = 1; k <= 6; ++k) {
            int hits = 0;
            for (const auto& q : padic::apartment_classes(2 * k, padic::split_invariants(2 * k, p), p))
                if (q.r == k) hits += q == padic::Quintuple{0, 0, 0, 0, k};
            unique = unique && hits == 1;
        }
    report(7, "apartment classes", five && unique,
           detail + " (five required where -1 is a square); r=k quintuple unique " + (unique ? "yes" : "no"));
}

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

bool solvable_mod_p3(long long a, long long b, int p) {
    const long long m = 1LL * p * p * p;
    std::vector<char> sq(m, 0);
    for (long long z = 0; z < m; ++z) sq[z * z % m] = 1;
    for (long long x = 0; x < m; ++x)
        for (long long y = 0; y < m; ++y)
            if ((x % p || y % p) && sq[mod(a * x % m * x + b * y % m * y, m)]) return true;
    return false;
}

void criterion8() {
    int pairs = 0, bad = 0;
    for (int p : kPrimes) {
        int e0 = 2;
        while (padic::legendre(e0, p) != -1) ++e0;
        for (const auto& a : padic::all_classes(p))
            for (const auto& b : padic::all_classes(p)) {
                const long long ra = (a.u ? e0 : 1) * (a.v ? p : 1), rb = (b.u ? e0 : 1) * (b.v ? p : 1);
                ++pairs;
                if ((padic::hilbert_symbol(a, b) == 1) != solvable_mod_p3(ra, rb, p)) ++bad;
            }
    }
    report(8, "Hilbert symbol oracle", bad == 0 && pairs == 64,
           std::to_string(pairs) + " pairs, " + std::to_string(bad) + " mismatches");
}

void criterion9() {
    int models = 0, bad = 0;
    auto fail = [&](const std::string& what) {
        ++bad;
        std::printf("  %s\n", what.c_str());
    };
    for (const std::string kind : {"sl2", "su3"})
        for (int q : {3, 5})
            for (CaseTag t : rankone::cases_for(kind))
                for (const auto& params : rankone::admissible_params(t, q)) {
                    auto spec = rankone::build_involution(t, q, params);
                    auto m = localgraph::build_gamma(spec);
                    ++models;
                    const bool looped = !m.graph.loops.empty();
                    if (!m.check.connected) fail(m.name + " not connected");
                    if (m.graph.vertex_sizes.empty()) continue;
                    if (m.check.bipartite && m.harmonic_dim != 1) fail(m.name + " bipartite, dim != 1");
                    if (looped && m.harmonic_dim != 0) fail(m.name + " looped, dim != 0");
                }
    int orth = 0;
    for (int n : {2, 3})
        for (int q : {3, 5})
            for (const auto& eps : localgraph::orthogonal_forms(n, q)) {
                auto m = localgraph::gln_orth_local(n, q, eps);
                ++orth;
                if (!m.two_orbit_condition) fail(m.name + " panel without exactly two orbits");
                if (m.harmonic_dim != 1) fail(m.name + " harmonic dimension " + std::to_string(m.harmonic_dim));
            }
    report(9, "local graphs", bad == 0,
           std::to_string(models) + " rank-one models, " + std::to_string(orth) + " orthogonal models, " +
               std::to_string(bad) + " failures");
}

void criterion10() {
    std::mt19937_64 rng(20240601);
    int hilbert = 0, hilbert_bad = 0;
    for (int i = 0; i < kPropertyInstances; ++i) {
        const int p = kPrimes[rng() % 4];
        auto rnd = [&] {
            mpq_class x(long(rng() % 999) + 1, long(rng() % 97) + 1);
            if (rng() % 2) x = -x;
            if (rng() % 3 == 0) x *= p;
            return x;
        };
        const mpq_class a = rnd(), b = rnd(), c = rnd();
        auto A = padic::square_class(a, p), B = padic::square_class(b, p), C = padic::square_class(c, p);
        ++hilbert;
        if (padic::hilbert_symbol(A, B) != padic::hilbert_symbol(B, A) ||
            padic::hilbert_symbol(padic::square_class(a * b, p), C) !=
                padic::hilbert_symbol(A, C) * padic::hilbert_symbol(B, C))
            ++hilbert_bad;
    }

    int diag = 0, diag_bad = 0;
    while (diag < kPropertyInstances) {
        const int p = kPrimes[rng() % 4];
        const int n = 2 + int(rng() % 3);
        padic::QMatrix A(n, std::vector<mpq_class>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) A[i][j] = A[j][i] = long(rng() % 15) - 7;
        padic::QMatrix P(n, std::vector<mpq_class>(n, 0)), B(n, std::vector<mpq_class>(n, 0));
        for (int i = 0; i < n; ++i) {
            P[i][i] = long(rng() % 4) + 1;
            for (int j = 0; j < i; ++j) P[i][j] = long(rng() % 7) - 3;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) B[i][j] += P[k][i] * A[k][l] * P[l][j];
        try {
            auto x = padic::invariants(padic::diagonalize(A, p).form);
            auto y = padic::invariants(padic::diagonalize(B, p).form);
            ++diag;
            diag_bad += !(x == y);
        } catch (const Singular&) {
        }
    }

    int words = 0, words_bad = 0, lengths = 0, lengths_bad = 0;
    for (const char* type : {"CB2", "A2", "CB3"}) {
        auto sys = coxeter::build_system(type);
        coxeter::ShellStore store(sys);
        store.extend_to(8);
        coxeter::WallParams p;
        for (int s = 0; s < sys.size(); ++s) {
            p.eps.push_back(1);
            p.m.push_back(mpq_class(1, 3));
            p.n_factor.emplace_back();
            p.Q_factor.emplace_back();
        }
        // distinct parameters on the ends of the even (4-) bonds
        if (sys.family == coxeter::Family::C && sys.rank >= 2) {
            p.m[0] = mpq_class(1, 5);
            p.eps[sys.rank] = -1;
            p.m[sys.rank] = mpq_class(2, 7);
        }
        coxeter::validate(sys, p);
        for (int i = 0; i < kPropertyInstances; ++i) {
            const int id = int(rng() % store.size());
            auto w1 = store.reduced_word(id);
            auto w2 = store.random_reduced_word(id, rng());
            ++words;
            words_bad += !(store.element_of_word(w2) == id && coxeter::word_weight(p, w1) == coxeter::word_weight(p, w2));
            ++lengths;
            bool ok = int(w2.size()) == store.length(id);
            for (int s = 0; s < sys.size() && store.length(id) < 8; ++s)
                ok = ok && std::abs(store.length(store.right_mul(id, s)) - store.length(id)) == 1;
            lengths_bad += !ok;
        }
    }
    const bool ok = hilbert_bad == 0 && diag_bad == 0 && words_bad == 0 && lengths_bad == 0 &&
                    std::min({hilbert, diag, words / 3, lengths / 3}) >= kPropertyInstances;
    report(10, "property suites", ok,
           "hilbert " + std::to_string(hilbert) + "/" + std::to_string(hilbert_bad) + ", diagonalization " +
               std::to_string(diag) + "/" + std::to_string(diag_bad) + ", reduced words " + std::to_string(words) +
               "/" + std::to_string(words_bad) + ", lengths " + std::to_string(lengths) + "/" +
               std::to_string(lengths_bad) + " (instances/failures)");
}

}  // namespace

int main() {
    const std::vector<void (*)()> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                              criterion6, criterion7, criterion8, criterion9, criterion10};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(int(i + 1), "criterion", false, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
