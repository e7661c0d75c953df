#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "steinberg/localgraph.hpp"

using namespace steinberg;
using namespace steinberg::localgraph;
using rankone::CaseTag;

namespace {

// H-orbits by closure, theta-split iff theta(Stab b) fixes a different point.
int oracle_split_orbits(const rankone::InvolutionSpec& spec) {
    auto d = ffalg::group_data(spec.group);
    auto H = rankone::fixed_group(spec);
    auto img = rankone::theta_images(spec);
    const auto& F = *spec.group.F;
    std::vector<int> seen(d->borels.size(), 0);
    int split_orbits = 0;
    for (std::size_t i = 0; i < d->borels.size(); ++i) {
        if (seen[i]) continue;
        for (const auto& h : H.elements) seen[d->index.at(ffalg::act(F, h, d->borels[i]))] = 1;
        if (img[i] != int(i)) ++split_orbits;
    }
    return split_orbits;
}

Elt form_value(const ffalg::FiniteField& F, const Mat& eps, const std::vector<Elt>& u, const std::vector<Elt>& v) {
    Elt s = 0;
    for (int i = 0; i < eps.n; ++i)
        for (int j = 0; j < eps.n; ++j) s = F.add(s, F.mul(u[i], F.mul(eps(i, j), v[j])));
    return s;
}

// Flags whose steps are all non-degenerate for eps.
std::size_t oracle_nondegenerate_flags(int n, int q, const Mat& eps) {
    auto G = ffalg::gln(n, q);
    const auto& F = *G.F;
    std::size_t count = 0;
    for (const auto& b : ffalg::group_data(G)->borels) {
        bool ok = true;
        for (std::size_t s = 0; s + 1 < std::size_t(n) && ok; ++s) {
            auto basis = b.space(s);
            const int k = int(basis.size());
            Mat gram;
            gram.n = k;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) gram(i, j) = form_value(F, eps, basis[i], basis[j]);
            ok = ffalg::det(F, gram) != 0;
        }
        count += ok;
    }
    return count;
}

}  // namespace

TEST_CASE("panel pair types") {
    CHECK(classify_panel_pair({{1, 0}, {4, 1}}, 1, 4, false, false) == PanelPairType::Skew);
    CHECK(classify_panel_pair({{5, 1}}, 1, 4, true, true) == PanelPairType::Trivial);
    CHECK(classify_panel_pair({{2, 1}, {3, 1}}, 1, 4, true, true) == PanelPairType::Even);
    CHECK(classify_panel_pair({{2, 1}, {3, 2}}, 1, 4, true, true) == PanelPairType::Upper);
    CHECK(classify_panel_pair({{2, 1}, {3, 0}}, 1, 4, true, false) == PanelPairType::Lower);
    CHECK_THROWS_AS(classify_panel_pair({{1, 0}, {3, 1}}, 1, 4, false, false), Unclassifiable);
    CHECK_THROWS_AS(classify_panel_pair({{2, 0}, {3, 0}}, 1, 4, false, false), Unclassifiable);
    CHECK(to_string(PanelPairType::Upper) == "upper");
}

TEST_CASE("skew propagation matches stepwise harmonicity") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 100; ++t) {
        const int len = int(rng() % 6);
        std::vector<long long> Qs;
        for (int i = 0; i < len; ++i) Qs.push_back((long long)(rng() % 30) + 1);
        mpq_class f0(long(rng() % 19) - 9, long(rng() % 7) + 1);
        f0.canonicalize();
        // f(C_i) + Q_i f(C_{i+1}) = 0 along the gallery
        mpq_class f = f0;
        for (long long Q : Qs) {
            mpq_class next = -f / mpq_class(long(Q));
            CHECK(f + mpq_class(long(Q)) * next == 0);
            f = next;
        }
        CHECK(skew_propagation(f0, Qs) == f);
    }
    CHECK_THROWS_AS(skew_propagation(1, {3, 0}), BadParams);
}

TEST_CASE("gamma checks on small graphs") {
    LocalGraph path;
    path.vertex_sizes = {1, 1, 1};
    path.edges = {{0, 1}, {1, 2}};
    auto c = check_gamma(path);
    CHECK(c.connected);
    CHECK(c.bipartite);

    LocalGraph tri = path;
    tri.edges.push_back({0, 2});
    CHECK_FALSE(check_gamma(tri).bipartite);

    LocalGraph loop;
    loop.vertex_sizes = {3};
    loop.loops = {0};
    CHECK(check_gamma(loop).connected);
    CHECK_FALSE(check_gamma(loop).bipartite);

    LocalGraph split;
    split.vertex_sizes = {1, 1};
    CHECK_FALSE(check_gamma(split).connected);
}

TEST_CASE("harmonic dimension of small incidence problems") {
    HarmonicProblem hp;
    hp.num_chambers = 4;
    hp.label = {0, 0, 1, 1};
    hp.num_orbits = 2;
    hp.panel_size = 4;
    hp.panels = {{0, 1, 2, 3}};
    CHECK(harmonic_dimension(hp) == 1);
    hp.label = {0, 0, 0, -1};
    hp.num_orbits = 1;
    CHECK(harmonic_dimension(hp) == 0);
    hp.label = {0, 1, 2, -1};
    hp.num_orbits = 3;
    CHECK(harmonic_dimension(hp) == 2);
    hp.sign_relations = {{0, 0}};
    CHECK(harmonic_dimension(hp) == 1);
    hp.panels = {{0, 1, 2}};
    CHECK_THROWS_AS(harmonic_dimension(hp), InconsistentIncidence);
}

TEST_CASE("rank-one local graphs") {
    for (int q : {3, 5, 9}) {
        for (CaseTag t : rankone::cases_for("sl2")) {
            for (const auto& params : rankone::admissible_params(t, q)) {
                auto spec = rankone::build_involution(t, q, params);
                auto m = build_gamma(spec);
                CAPTURE(rankone::to_string(t));
                CAPTURE(q);
                const int orbits = oracle_split_orbits(spec);
                CHECK(int(m.graph.vertex_sizes.size()) == orbits);
                CHECK(m.check.connected);
                CHECK(m.harmonic_dim == std::max(0, orbits - 1));
                if (orbits == 2) CHECK(m.graph.edges.size() == 1);
                if (orbits == 1) CHECK(m.graph.loops.size() == 1);
                if (orbits > 0) CHECK(m.harmonic_dim == (m.check.bipartite ? 1 : 0));
            }
        }
    }
    for (CaseTag t : rankone::cases_for("su3")) {
        auto spec = rankone::build_involution(t, 3);
        auto m = build_gamma(spec);
        CAPTURE(rankone::to_string(t));
        CHECK(m.check.connected);
        CHECK(m.harmonic_dim == std::max(0, oracle_split_orbits(spec) - 1));
    }
}

TEST_CASE("characters") {
    auto spec = rankone::build_involution(CaseTag::SL2_IIi1, 5);
    Character bad = [](const Mat&) { return -1; };
    CHECK_THROWS_AS(build_gamma(spec, bad), BadCharacter);
    Character zero = [](const Mat&) { return 0; };
    CHECK_THROWS_AS(build_gamma(spec, zero), BadCharacter);
    auto m = build_gamma(spec, trivial_character());
    CHECK(m.harmonic_dim == 1);
}

TEST_CASE("orthogonal local models") {
    for (int n : {2, 3}) {
        const int q = 3;
        for (const auto& eps : orthogonal_forms(n, q)) {
            auto m = gln_orth_local(n, q, eps);
            CAPTURE(n);
            CAPTURE(m.name);
            CHECK(m.theta_split == oracle_nondegenerate_flags(n, q, eps));
            CHECK(m.two_orbit_condition);
            CHECK(m.graph.violations == 0);
            for (int c : m.graph.panel_orbit_counts) CHECK(c == 2);
            CHECK(m.check.connected);
            CHECK(m.check.bipartite);
            CHECK(m.harmonic_dim == 1);
            CHECK_FALSE(m.conjecture_counterexample);
        }
    }
    CHECK_THROWS_AS(gln_orth_local(4, 3, ffalg::identity(4)), BadParams);
    CHECK_THROWS_AS(gln_orth_local(2, 3, ffalg::from_rows({{1, 1}, {0, 1}})), BadParams);
}

TEST_CASE("orthogonal flag image is an involution") {
    const int q = 5;
    auto G = ffalg::gln(3, q);
    const auto& F = *G.F;
    for (const auto& eps : orthogonal_forms(3, q))
        for (const auto& b : ffalg::group_data(G)->borels) CHECK(orth_flag_image(F, eps, orth_flag_image(F, eps, b)) == b);
}
