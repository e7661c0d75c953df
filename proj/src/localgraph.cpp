#include "steinberg/localgraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "steinberg/qlinalg.hpp"

namespace steinberg::localgraph {

std::string to_string(PanelPairType t) {
    switch (t) {
        case PanelPairType::Skew: return "skew";
        case PanelPairType::Trivial: return "trivial";
        case PanelPairType::Even: return "even";
        case PanelPairType::Upper: return "upper";
        case PanelPairType::Lower: return "lower";
    }
    return "?";
}

PanelPairType classify_panel_pair(const std::vector<std::pair<std::size_t, int>>& orbits, int r, std::size_t Q_D,
                                  bool hyperplane_theta_stable, bool torus_split) {
    std::size_t total = 0;
    std::set<int> ranks;
    for (const auto& [size, rank] : orbits) {
        if (size == 0) throw Unclassifiable("empty orbit");
        total += size;
        ranks.insert(rank);
    }
    if (total != Q_D + 1)
        throw Unclassifiable("orbit sizes sum to " + std::to_string(total) + ", expected Q_D+1=" +
                             std::to_string(Q_D + 1));
    if (!hyperplane_theta_stable) {
        if (orbits.size() == 2) {
            auto a = orbits[0], b = orbits[1];
            if (a.first > b.first) std::swap(a, b);
            if (a.first == 1 && b.first == Q_D && b.second == a.second + 1) return PanelPairType::Skew;
        }
        throw Unclassifiable("non-stable hyperplane needs orbits of sizes 1 and Q_D at distances d, d+1");
    }
    if (orbits.size() == 1 && orbits[0].second == r) return PanelPairType::Trivial;
    if (ranks == std::set<int>{r} && torus_split) return PanelPairType::Even;
    if (ranks == std::set<int>{r, r + 1} && torus_split) return PanelPairType::Upper;
    if (ranks == std::set<int>{r, r - 1} && !torus_split) return PanelPairType::Lower;
    throw Unclassifiable("orbit data does not match any panel-pair type");
}

mpq_class skew_propagation(const mpq_class& f0, const std::vector<long long>& Qs) {
    mpq_class f = f0;
    for (long long Q : Qs) {
        if (Q <= 0) throw BadParams("Q_i must be positive");
        f /= mpq_class(mpz_class(std::to_string(-Q)));
    }
    f.canonicalize();
    return f;
}

Character trivial_character() {
    return [](const Mat&) { return 1; };
}

Character corner_character(ffalg::FieldPtr F) {
    return [F](const Mat& h) { return F->legendre(h(0, 0)); };
}

GammaCheck check_gamma(const LocalGraph& g) {
    GammaCheck c;
    const int n = int(g.vertex_sizes.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<int> colour(n, -1);
    int components = 0;
    for (int s = 0; s < n; ++s) {
        if (colour[s] >= 0) continue;
        ++components;
        colour[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (colour[v] < 0) {
                    colour[v] = 1 - colour[u];
                    stack.push_back(v);
                } else if (colour[v] == colour[u]) {
                    c.bipartite = false;
                }
            }
        }
    }
    c.connected = components <= 1;
    if (!g.loops.empty()) c.bipartite = false;
    return c;
}

int harmonic_dimension(const HarmonicProblem& hp) {
    if (hp.label.size() != hp.num_chambers) throw InconsistentIncidence("label list does not cover the chambers");
    for (int l : hp.label)
        if (l < -1 || l >= hp.num_orbits) throw InconsistentIncidence("orbit label out of range");
    const int cols = hp.num_orbits;
    std::vector<qlinalg::Row> rows;
    for (const auto& [a, b] : hp.sign_relations) {
        if (a < 0 || b < 0 || a >= cols || b >= cols) throw InconsistentIncidence("sign relation out of range");
        qlinalg::Row row(cols, 0);
        row[a] += 1;
        row[b] += 1;
        rows.push_back(std::move(row));
    }
    for (const auto& panel : hp.panels) {
        if (panel.size() != hp.panel_size)
            throw InconsistentIncidence("panel with " + std::to_string(panel.size()) + " chambers, expected " +
                                        std::to_string(hp.panel_size));
        qlinalg::Row row(cols, 0);
        bool any = false;
        for (int c : panel) {
            if (c < 0 || std::size_t(c) >= hp.num_chambers) throw InconsistentIncidence("chamber index out of range");
            if (hp.label[c] >= 0) {
                row[hp.label[c]] += 1;
                any = true;
            }
        }
        if (any) rows.push_back(std::move(row));
    }
    if (cols == 0) return 0;
    return qlinalg::nullity(rows, cols);
}

bool is_theta_split(const ffalg::GroupData& data, int x, const BorelPoint& theta_x) {
    const auto& F = *data.spec.F;
    const BorelPoint y = ffalg::act(F, ffalg::inverse(F, data.transporter.at(x)), theta_x);
    std::uint64_t count = 0;
    for (const auto& b : data.borel_subgroup)
        if (ffalg::act(F, b, y) == y && ++count > data.torus_order) return false;
    return count == data.torus_order;
}

namespace {

struct Incidence {
    std::vector<std::vector<int>> panels;
    std::vector<int> panel_type;
    std::vector<std::vector<int>> panel_of;  // [type][chamber] -> panel
    std::size_t panel_size = 0;
};

void validate_character(const std::vector<Mat>& H, const ffalg::FiniteField& F, const Character& chi,
                        std::uint64_t seed) {
    std::vector<int> val(H.size());
    for (std::size_t i = 0; i < H.size(); ++i) {
        val[i] = chi(H[i]);
        if (val[i] != 1 && val[i] != -1) throw BadCharacter("character values must be +1 or -1");
    }
    auto check = [&](std::size_t i, std::size_t j) {
        if (chi(ffalg::mul(F, H[i], H[j])) != val[i] * val[j]) throw BadCharacter("character is not multiplicative");
    };
    const std::size_t n = H.size();
    if (n * n <= 4'000'000) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) check(i, j);
        return;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t) check(pick(rng), pick(rng));
}

LocalModel assemble(LocalModel m, const ffalg::FiniteField& F, const std::vector<BorelPoint>& chambers,
                    const std::unordered_map<BorelPoint, int, ffalg::BorelHash>& index, const Incidence& inc,
                    const std::vector<bool>& split, const std::vector<Mat>& H, const Character& chi,
                    std::uint64_t seed) {
    validate_character(H, F, chi, seed);
    std::vector<Mat> Hk;
    const Mat* h0 = nullptr;
    for (const auto& h : H) {
        if (chi(h) == 1)
            Hk.push_back(h);
        else if (!h0)
            h0 = &h;
    }
    const int nc = int(chambers.size());
    m.chambers = chambers.size();
    m.fixed_group_order = H.size();

    std::vector<int> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    std::vector<int> split_list;
    for (int c = 0; c < nc; ++c)
        if (split[c]) split_list.push_back(c);
    m.theta_split = split_list.size();
    for (const auto& h : Hk)
        for (int c : split_list) {
            const int d = index.at(ffalg::act(F, h, chambers[c]));
            if (!split[d]) throw std::logic_error("fixed group does not preserve theta-split chambers");
            unite(c, d);
        }

    HarmonicProblem& hp = m.problem;
    hp.num_chambers = chambers.size();
    hp.label.assign(nc, -1);
    hp.panels = inc.panels;
    hp.panel_size = inc.panel_size;
    std::map<int, int> label_of_root;
    std::vector<int> rep;
    for (int c : split_list) {
        auto [it, fresh] = label_of_root.emplace(find(c), int(rep.size()));
        if (fresh) {
            rep.push_back(c);
            m.graph.vertex_sizes.push_back(0);
        }
        hp.label[c] = it->second;
        ++m.graph.vertex_sizes[it->second];
    }
    hp.num_orbits = int(rep.size());
    if (h0)
        for (int a = 0; a < hp.num_orbits; ++a)
            hp.sign_relations.emplace_back(a, hp.label[index.at(ffalg::act(F, *h0, chambers[rep[a]]))]);

    // H_chi-orbits of panels with theta-split neighbours.
    const int np = int(inc.panels.size());
    std::vector<int> pparent(np);
    std::iota(pparent.begin(), pparent.end(), 0);
    auto pfind = [&](int a) {
        while (pparent[a] != a) a = pparent[a] = pparent[pparent[a]];
        return a;
    };
    std::vector<int> live;
    for (int P = 0; P < np; ++P)
        if (std::any_of(inc.panels[P].begin(), inc.panels[P].end(), [&](int c) { return split[c]; }))
            live.push_back(P);
    for (const auto& h : Hk)
        for (int P : live) {
            const int c = index.at(ffalg::act(F, h, chambers[inc.panels[P][0]]));
            int a = pfind(P), b = pfind(inc.panel_of[inc.panel_type[P]][c]);
            if (a != b) pparent[std::max(a, b)] = std::min(a, b);
        }
    m.two_orbit_condition = true;
    for (int P : live) {
        if (pfind(P) != P) continue;
        std::set<int> met;
        for (int c : inc.panels[P])
            if (split[c]) met.insert(hp.label[c]);
        m.graph.panel_orbit_counts.push_back(int(met.size()));
        if (met.size() != 2) m.two_orbit_condition = false;
        std::vector<int> v(met.begin(), met.end());
        if (v.size() == 1) {
            m.graph.loops.push_back(v[0]);
        } else {
            if (v.size() > 2) ++m.graph.violations;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j) m.graph.edges.push_back({v[i], v[j]});
        }
    }
    m.check = check_gamma(m.graph);
    m.harmonic_dim = harmonic_dimension(hp);
    m.conjecture_counterexample = !live.empty() && m.two_orbit_condition && !m.check.bipartite;
    return m;
}

bool nondegenerate_flag(const ffalg::FiniteField& F, const Mat& eps, const BorelPoint& b) {
    for (std::size_t i = 0; i < b.dims.size(); ++i) {
        const auto basis = b.space(i);
        const int d = int(basis.size());
        Mat gram;
        gram.n = d;
        for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s) {
                Elt acc = 0;
                for (int k = 0; k < b.n; ++k)
                    for (int l = 0; l < b.n; ++l)
                        acc = F.add(acc, F.mul(basis[r][k], F.mul(eps(k, l), basis[s][l])));
                gram(r, s) = acc;
            }
        if (ffalg::det(F, gram) == 0) return false;
    }
    return true;
}

}  // namespace

BorelPoint orth_flag_image(const ffalg::FiniteField& F, const Mat& eps, const BorelPoint& b) {
    const int n = b.n;
    const int k = int(b.dims.size());
    std::vector<std::vector<std::vector<Elt>>> spaces;
    for (int i = 0; i < k; ++i) {
        std::vector<std::vector<Elt>> rows;
        for (const auto& v : b.space(k - 1 - i)) {
            std::vector<Elt> row(n, 0);
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) row[j] = F.add(row[j], F.mul(v[l], eps(l, j)));
            rows.push_back(row);
        }
        spaces.push_back(ffalg::nullspace(F, rows, n));
    }
    return BorelPoint::from_spaces(F, n, spaces);
}

std::vector<Mat> orthogonal_forms(int n, int q) {
    auto F = ffalg::field(q);
    Elt e0 = 0;
    for (int a = 1; a < q; ++a)
        if (!F->is_square(Elt(a))) {
            e0 = Elt(a);
            break;
        }
    std::vector<Elt> d(n, 1);
    d[n - 1] = e0;
    return {ffalg::identity(n), ffalg::diag(d), ffalg::antidiagonal(n)};
}

LocalModel build_gamma(const rankone::InvolutionSpec& spec, const Character& chi, std::uint64_t cap,
                       std::uint64_t seed) {
    const auto img = rankone::theta_images(spec);
    auto data = ffalg::group_data(spec.group, cap);
    const auto& F = *spec.group.F;
    const int nc = int(data->borels.size());
    std::vector<bool> split(nc);
    for (int x = 0; x < nc; ++x) {
        split[x] = is_theta_split(*data, x, data->borels[img[x]]);
        if (split[x] != (img[x] != x)) throw std::logic_error("theta-split test disagrees with the theta-rank");
    }
    Incidence inc;
    inc.panels.emplace_back(nc);
    std::iota(inc.panels[0].begin(), inc.panels[0].end(), 0);
    inc.panel_type = {0};
    inc.panel_of = {std::vector<int>(nc, 0)};
    inc.panel_size = std::size_t(nc);

    LocalModel m;
    m.name = rankone::to_string(spec.tag);
    m.q = spec.group.q;
    const auto H = rankone::fixed_group(spec, cap);
    return assemble(std::move(m), F, data->borels, data->index, inc, split, H.elements, chi, seed);
}

LocalModel gln_orth_local(int n, int q, const Mat& eps, const Character& chi, std::uint64_t cap, std::uint64_t seed) {
    if (n < 2 || n > 3) throw BadParams("orthogonal local models need 2 <= n <= 3");
    if (eps.n != n) throw BadParams("form size does not match n");
    const auto G = ffalg::gln(n, q);
    const auto& F = *G.F;
    if (!(ffalg::transpose(eps) == eps) || ffalg::det(F, eps) == 0)
        throw BadParams("form must be symmetric and invertible");
    auto data = ffalg::group_data(G, cap);
    const auto& ch = data->borels;
    const int nc = int(ch.size());
    std::vector<bool> split(nc);
    for (int x = 0; x < nc; ++x) {
        split[x] = is_theta_split(*data, x, orth_flag_image(F, eps, ch[x]));
        if (split[x] != nondegenerate_flag(F, eps, ch[x]))
            throw std::logic_error("theta-split test disagrees with non-degeneracy");
    }
    // Panel of type t: the flag with step t dropped.
    Incidence inc;
    inc.panel_size = std::size_t(q) + 1;
    const int steps = n - 1;
    inc.panel_of.assign(steps, std::vector<int>(nc, -1));
    for (int t = 0; t < steps; ++t) {
        std::map<std::vector<Elt>, int> key_to_panel;
        for (int x = 0; x < nc; ++x) {
            std::vector<Elt> key;
            for (int i = 0; i < steps; ++i) {
                if (i == t) continue;
                for (const auto& row : ch[x].space(i)) key.insert(key.end(), row.begin(), row.end());
                key.push_back(Elt(0xffff));
            }
            auto [it, fresh] = key_to_panel.emplace(key, int(inc.panels.size()));
            if (fresh) {
                inc.panels.emplace_back();
                inc.panel_type.push_back(t);
            }
            inc.panels[it->second].push_back(x);
            inc.panel_of[t][x] = it->second;
        }
    }
    LocalModel m;
    m.name = "GL" + std::to_string(n) + "-orth[" + ffalg::to_string(F, eps) + "]";
    m.q = q;
    const auto H = ffalg::enumerate_group(ffalg::son(eps, q), cap);
    return assemble(std::move(m), F, ch, data->index, inc, split, H, chi, seed);
}

}  // namespace steinberg::localgraph
