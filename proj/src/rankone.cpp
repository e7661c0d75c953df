#include "steinberg/rankone.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace steinberg::rankone {

using ffalg::BorelPoint;
using ffalg::FiniteField;
using ffalg::GroupData;
using ffalg::GroupKind;
using ffalg::GroupSpec;

namespace {

const std::vector<std::pair<CaseTag, std::string>>& tag_names() {
    static const std::vector<std::pair<CaseTag, std::string>> names = {
        {CaseTag::SL2_Ii1, "SL2-I.i.1"},   {CaseTag::SL2_Ii2, "SL2-I.i.2"},   {CaseTag::SL2_Iii, "SL2-I.ii"},
        {CaseTag::SL2_IIi1, "SL2-II.i.1"}, {CaseTag::SL2_IIi2, "SL2-II.i.2"}, {CaseTag::SL2_IIii, "SL2-II.ii"},
        {CaseTag::SU3_Ii1, "SU3-I.i.1"},   {CaseTag::SU3_Ii2, "SU3-I.i.2"},   {CaseTag::SU3_Iii, "SU3-I.ii"},
        {CaseTag::SU3_IIi, "SU3-II.i"},    {CaseTag::SU3_IIii, "SU3-II.ii"},  {CaseTag::GLn_orth, "GLn-orth"},
        {CaseTag::GL2_conj, "GL2-conj"},   {CaseTag::GL2_O, "GL2-O"},
    };
    return names;
}

bool is_gl_case(CaseTag t) { return t == CaseTag::GLn_orth || t == CaseTag::GL2_conj || t == CaseTag::GL2_O; }

// Integer square root of q when q is a square prime power, else 0.
int sqrt_q(int q) {
    int s = 1;
    while (s * s < q) ++s;
    return s * s == q ? s : 0;
}

Mat diag2(Elt a, Elt b) { return ffalg::diag({a, b}); }

}  // namespace

std::string to_string(CaseTag t) {
    for (const auto& [tag, name] : tag_names())
        if (tag == t) return name;
    return "?";
}

CaseTag parse_case(const std::string& s) {
    for (const auto& [tag, name] : tag_names())
        if (name == s) return tag;
    throw BadParams("unknown case tag '" + s + "'");
}

std::vector<CaseTag> cases_for(const std::string& kind) {
    if (kind == "sl2")
        return {CaseTag::SL2_Ii1, CaseTag::SL2_Ii2, CaseTag::SL2_Iii,
                CaseTag::SL2_IIi1, CaseTag::SL2_IIi2, CaseTag::SL2_IIii};
    if (kind == "su3")
        return {CaseTag::SU3_Ii1, CaseTag::SU3_Ii2, CaseTag::SU3_Iii, CaseTag::SU3_IIi, CaseTag::SU3_IIii};
    throw BadParams("unknown group kind '" + kind + "' (expected sl2 or su3)");
}

bool is_su3_case(CaseTag t) {
    return t == CaseTag::SU3_Ii1 || t == CaseTag::SU3_Ii2 || t == CaseTag::SU3_Iii || t == CaseTag::SU3_IIi ||
           t == CaseTag::SU3_IIii;
}

Mat InvolutionSpec::apply(const Mat& g) const {
    const auto& F = *group.F;
    Mat h;
    switch (twist) {
        case Twist::None: h = g; break;
        case Twist::Frob: h = ffalg::frob(F, g, twist_power); break;
        case Twist::InvTranspose: h = ffalg::transpose(ffalg::inverse(F, g)); break;
        case Twist::FrobInvTranspose: h = ffalg::frob(F, ffalg::transpose(ffalg::inverse(F, g)), twist_power); break;
    }
    return ffalg::mul(F, ffalg::mul(F, left, h), right);
}

std::string InvolutionSpec::params_string() const {
    const auto& F = *group.F;
    std::ostringstream os;
    switch (tag) {
        case CaseTag::SL2_Iii:
        case CaseTag::SL2_IIi1:
        case CaseTag::SL2_IIi2:
        case CaseTag::SL2_IIii:
        case CaseTag::SU3_Iii: os << "x=" << F.to_string(x); break;
        case CaseTag::SU3_IIi:
        case CaseTag::SU3_IIii: os << "eps=" << F.to_string(eps) << ",delta=" << F.to_string(delta); break;
        case CaseTag::GLn_orth:
        case CaseTag::GL2_O: os << "form=" << ffalg::to_string(F, form); break;
        default: break;
    }
    return os.str();
}

std::vector<InvolutionParams> admissible_params(CaseTag tag, int q) {
    std::vector<InvolutionParams> out;
    auto [p, k] = ffalg::prime_power(q);
    (void)p;
    switch (tag) {
        case CaseTag::SL2_Ii1:
        case CaseTag::SL2_Ii2:
        case CaseTag::SU3_Ii1:
        case CaseTag::SU3_Ii2:
        case CaseTag::GL2_conj: out.push_back({}); break;
        case CaseTag::SL2_Iii:
        case CaseTag::SL2_IIii: {
            if (k % 2 != 0) break;
            auto F = ffalg::field(q);
            for (int a = 1; a < q; ++a) {
                Elt x = Elt(a);
                Elt s = F->frob(x, k / 2);
                bool ok = tag == CaseTag::SL2_Iii ? F->mul(s, x) == 1 : s == x;
                if (ok) out.push_back({x, {}, {}, {}});
            }
            break;
        }
        case CaseTag::SL2_IIi1:
        case CaseTag::SL2_IIi2: {
            auto F = ffalg::field(q);
            for (int a = 1; a < q; ++a) {
                Elt x = Elt(a);
                bool sq = F->is_square(F->neg(x));
                if (sq == (tag == CaseTag::SL2_IIi1)) out.push_back({x, {}, {}, {}});
            }
            break;
        }
        case CaseTag::SU3_Iii:
        case CaseTag::SU3_IIi:
        case CaseTag::SU3_IIii: {
            auto F = ffalg::field(q * q);
            for (int a = 1; a < q * q; ++a) {
                Elt v = Elt(a);
                Elt s = F->frob(v, k);
                if (tag == CaseTag::SU3_Iii && F->mul(s, v) == 1) out.push_back({v, {}, {}, {}});
                if (tag == CaseTag::SU3_IIi && s == v) out.push_back({{}, v, {}, {}});
                if (tag == CaseTag::SU3_IIii) out.push_back({{}, v, {}, {}});
            }
            break;
        }
        case CaseTag::GLn_orth: {
            auto F = ffalg::field(q);
            for (int a = 1; a < q; ++a) out.push_back({{}, {}, {}, diag2(1, Elt(a))});
            out.push_back({{}, {}, {}, ffalg::antidiagonal(2)});
            break;
        }
        case CaseTag::GL2_O: out.push_back({{}, {}, {}, ffalg::antidiagonal(2)}); break;
    }
    return out;
}

InvolutionSpec build_involution(CaseTag tag, int q, const InvolutionParams& params, bool verify, std::uint64_t cap) {
    InvolutionSpec s;
    s.tag = tag;
    auto [p, k] = ffalg::prime_power(q);
    (void)p;

    if (is_su3_case(tag)) {
        s.group = ffalg::su3(q);
    } else if (is_gl_case(tag)) {
        int n = 2;
        if (params.form) n = params.form->n;
        s.group = ffalg::gln(n, q);
    } else {
        s.group = ffalg::sl2(q);
    }
    const auto& F = *s.group.F;
    const int n = s.group.n;
    s.left = ffalg::identity(n);
    s.right = ffalg::identity(n);

    auto need = [&](const std::optional<Elt>& v, const char* name) -> Elt {
        if (v) {
            if (*v >= F.q()) throw BadParams(std::string(name) + " is not a field element");
            return *v;
        }
        auto all = admissible_params(tag, q);
        if (all.empty()) throw BadParams(to_string(tag) + " has no admissible parameters at q=" + std::to_string(q));
        const auto& first = all.front();
        return std::string(name) == "x" ? *first.x : *first.eps;
    };

    const Elt minus1 = F.neg(1);
    switch (tag) {
        case CaseTag::SL2_Ii1:
        case CaseTag::SU3_Ii1: break;
        case CaseTag::SL2_Ii2:
            s.left = s.right = diag2(1, minus1);
            break;
        case CaseTag::SU3_Ii2:
            s.left = s.right = ffalg::diag({1, minus1, 1});
            break;
        case CaseTag::GL2_conj:
            s.left = s.right = diag2(1, minus1);
            break;
        case CaseTag::SL2_Iii:
        case CaseTag::SL2_IIii: {
            if (k % 2 != 0) throw BadParams(to_string(tag) + " needs a square q");
            s.x = need(params.x, "x");
            if (s.x == 0) throw BadParams("x must be nonzero");
            Elt sx = F.frob(s.x, k / 2);
            if (tag == CaseTag::SL2_Iii && F.mul(sx, s.x) != 1)
                throw BadParams("SL2-I.ii needs sigma0(x) x = 1");
            if (tag == CaseTag::SL2_IIii && sx != s.x) throw BadParams("SL2-II.ii needs x in l0");
            s.left = diag2(1, F.inv(s.x));
            s.right = diag2(1, s.x);
            s.twist = tag == CaseTag::SL2_Iii ? InvolutionSpec::Twist::Frob : InvolutionSpec::Twist::FrobInvTranspose;
            s.twist_power = k / 2;
            break;
        }
        case CaseTag::SL2_IIi1:
        case CaseTag::SL2_IIi2: {
            s.x = need(params.x, "x");
            if (s.x == 0) throw BadParams("x must be nonzero");
            bool sq = F.is_square(F.neg(s.x));
            if (tag == CaseTag::SL2_IIi1 && !sq) throw BadParams("SL2-II.i.1 needs -x a square");
            if (tag == CaseTag::SL2_IIi2 && sq) throw BadParams("SL2-II.i.2 needs -x a non-square");
            s.left = diag2(1, F.inv(s.x));
            s.right = diag2(1, s.x);
            s.twist = InvolutionSpec::Twist::InvTranspose;
            break;
        }
        case CaseTag::SU3_Iii: {
            s.x = need(params.x, "x");
            if (s.x == 0 || F.mul(F.frob(s.x, k), s.x) != 1) throw BadParams("SU3-I.ii needs sigma(x) x = 1");
            s.left = ffalg::diag({1, F.inv(s.x), 1});
            s.right = ffalg::diag({1, s.x, 1});
            s.twist = InvolutionSpec::Twist::Frob;
            s.twist_power = k;
            break;
        }
        case CaseTag::SU3_IIi:
        case CaseTag::SU3_IIii: {
            s.eps = need(params.eps, "eps");
            if (s.eps == 0) throw BadParams("eps must be nonzero");
            if (tag == CaseTag::SU3_IIi) {
                if (F.frob(s.eps, k) != s.eps) throw BadParams("SU3-II.i needs eps in l");
                s.delta = F.mul(s.eps, s.eps);
            } else {
                s.delta = F.mul(F.frob(s.eps, k), s.eps);
                s.twist = InvolutionSpec::Twist::Frob;
                s.twist_power = k;
            }
            if (params.delta && *params.delta != s.delta)
                throw BadParams(tag == CaseTag::SU3_IIi ? "SU3-II.i needs delta = eps^2"
                                                        : "SU3-II.ii needs delta = sigma(eps) eps");
            const Elt di = F.inv(s.delta);
            Mat M;
            M.n = 3;
            M(0, 2) = di;
            M(1, 1) = F.mul(s.eps, di);
            M(2, 0) = 1;
            Mat Mp;
            Mp.n = 3;
            Mp(0, 2) = 1;
            Mp(1, 1) = F.mul(F.inv(s.eps), s.delta);
            Mp(2, 0) = s.delta;
            s.left = M;
            s.right = Mp;
            break;
        }
        case CaseTag::GLn_orth:
        case CaseTag::GL2_O: {
            Mat e = params.form ? *params.form : ffalg::antidiagonal(2);
            if (tag == CaseTag::GL2_O && e.n != 2) throw BadParams("GL2-O needs a 2x2 form");
            if (!(ffalg::transpose(e) == e)) throw BadParams("form must be symmetric");
            for (int i = 0; i < e.n; ++i)
                for (int j = 0; j < e.n; ++j)
                    if (e(i, j) >= F.q()) throw BadParams("form entry is not a field element");
            if (ffalg::det(F, e) == 0) throw BadParams("form must be invertible");
            s.form = e;
            s.left = ffalg::inverse(F, e);
            s.right = e;
            s.twist = InvolutionSpec::Twist::InvTranspose;
            break;
        }
    }

    if (verify) {
        auto data = ffalg::group_data(s.group, cap);
        auto check = [&](const Mat& g) {
            Mat t = s.apply(g);
            if (!ffalg::contains(s.group, t))
                throw NotInvolutive(to_string(tag) + ": theta does not preserve " + s.group.name());
            if (!(s.apply(t) == g)) throw NotInvolutive(to_string(tag) + ": theta^2 != id on a generator");
        };
        for (const auto& g : data->borel_subgroup) check(g);
        for (const auto& g : data->transporter) check(g);
        if (ffalg::group_order(s.group) <= cap) {
            auto elems = ffalg::group_elements(s.group, cap);
            for (const auto& g : *elems)
                if (!(s.apply(s.apply(g)) == g)) throw NotInvolutive(to_string(tag) + ": theta^2 != id");
        }
    }
    return s;
}

namespace {

std::pair<std::string, std::uint64_t> describe(const InvolutionSpec& s) {
    const std::uint64_t q = std::uint64_t(s.group.q);
    const std::uint64_t r = std::uint64_t(sqrt_q(s.group.q));
    switch (s.tag) {
        case CaseTag::SL2_Ii1:
        case CaseTag::SU3_Ii1: return {"whole group", ffalg::group_order(s.group)};
        case CaseTag::SL2_Ii2: return {"diagonal torus", q - 1};
        case CaseTag::SL2_Iii: return {"conjugate of SL2(l0)", r * (r * r - 1)};
        case CaseTag::SL2_IIi1: return {"split special orthogonal SO2", q - 1};
        case CaseTag::SL2_IIi2: return {"anisotropic special orthogonal SO2", q + 1};
        case CaseTag::SL2_IIii: return {"special unitary SU2(l/l0)", r * (r * r - 1)};
        case CaseTag::SU3_Ii2: return {"unitary U2(l)", q * (q + 1) * (q * q - 1)};
        case CaseTag::SU3_Iii: return {"special orthogonal SO3(l)", q * (q * q - 1)};
        case CaseTag::SU3_IIi: return {"conjugate of U2(l)", q * (q + 1) * (q * q - 1)};
        case CaseTag::SU3_IIii: return {"conjugate of SO3(l)", q * (q * q - 1)};
        case CaseTag::GLn_orth: return {"special orthogonal SOn(eps)", ffalg::group_order(ffalg::son(s.form, s.group.q))};
        case CaseTag::GL2_conj: return {"diagonal torus of GL2", (q - 1) * (q - 1)};
        case CaseTag::GL2_O: return {"orthogonal O2(eps)", 2 * (q - 1)};
    }
    return {"", 0};
}

bool is_closed(const std::vector<Mat>& H, const FiniteField& F) {
    std::unordered_set<Mat, ffalg::MatHash> set(H.begin(), H.end());
    for (const auto& h : H)
        if (!set.count(ffalg::inverse(F, h))) return false;
    const std::size_t n = H.size();
    if (n * n <= 4'000'000) {
        for (const auto& a : H)
            for (const auto& b : H)
                if (!set.count(ffalg::mul(F, a, b))) return false;
        return true;
    }
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t)
        if (!set.count(ffalg::mul(F, H[pick(rng)], H[pick(rng)]))) return false;
    return true;
}

void require_rank_one(const InvolutionSpec& spec) {
    const auto k = spec.group.kind;
    if (k == GroupKind::SL2 || k == GroupKind::SU3) return;
    if (k == GroupKind::GLn && spec.group.n == 2) return;
    throw NotRankOne(spec.group.name() + " is not of semisimple rank one");
}

}  // namespace

FixedGroup fixed_group(const InvolutionSpec& spec, std::uint64_t cap) {
    FixedGroup H;
    H.tag = spec.tag;
    auto [desc, order] = describe(spec);
    H.description = desc;
    H.description_order = order;
    const auto& F = *spec.group.F;
    auto keep = [&](const Mat& g) {
        if (!(spec.apply(g) == g)) return;
        if (spec.tag == CaseTag::GLn_orth && ffalg::det(F, g) != 1) return;
        H.elements.push_back(g);
    };
    if (ffalg::group_order(spec.group) <= 2'000'000) {
        auto elems = ffalg::group_elements(spec.group, cap);
        for (const auto& g : *elems) keep(g);
    } else {
        ffalg::for_each_element(spec.group, keep, cap);
    }
    H.closed = H.elements.size() == ffalg::group_order(spec.group) || is_closed(H.elements, F);
    return H;
}

std::vector<int> theta_images(const InvolutionSpec& spec) {
    require_rank_one(spec);
    auto data = ffalg::group_data(spec.group);
    const auto& F = *spec.group.F;
    std::vector<int> cand(data->borels.size());
    std::iota(cand.begin(), cand.end(), 0);
    for (const auto& b : data->borel_subgroup) {
        Mat tb = spec.apply(b);
        std::vector<int> next;
        for (int c : cand)
            if (ffalg::act(F, tb, data->borels[c]) == data->borels[c]) next.push_back(c);
        cand.swap(next);
        if (cand.size() <= 1) break;
    }
    if (cand.size() != 1) throw std::logic_error("theta(B) does not fix a unique Borel point");
    const auto& y0 = data->borels[cand[0]];
    std::vector<int> img(data->borels.size());
    for (std::size_t i = 0; i < data->borels.size(); ++i)
        img[i] = data->index.at(ffalg::act(F, spec.apply(data->transporter[i]), y0));
    return img;
}

std::vector<int> theta_ranks(const InvolutionSpec& spec) {
    auto img = theta_images(spec);
    std::vector<int> r(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) r[i] = img[i] == int(i) ? 1 : 0;
    return r;
}

int theta_rank_of_borel(const InvolutionSpec& spec, const BorelPoint& b) {
    require_rank_one(spec);
    auto data = ffalg::group_data(spec.group);
    auto it = data->index.find(b);
    if (it == data->index.end()) throw BadParams("not a Borel point of " + spec.group.name());
    return theta_ranks(spec)[it->second];
}

std::vector<std::vector<int>> orbits_of(const GroupData& data, const std::vector<Mat>& group) {
    const auto& F = *data.spec.F;
    const int npts = int(data.borels.size());
    std::vector<int> parent(npts);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    // Sampled generators first, then a full closure check on representatives.
    const std::size_t step = std::max<std::size_t>(1, group.size() / 48);
    for (std::size_t i = 0; i < group.size(); i += step)
        for (int x = 0; x < npts; ++x) unite(x, data.index.at(ffalg::act(F, group[i], data.borels[x])));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> reps;
        for (int x = 0; x < npts; ++x)
            if (find(x) == x) reps.push_back(x);
        for (int r : reps)
            for (const auto& h : group) {
                int y = data.index.at(ffalg::act(F, h, data.borels[r]));
                if (find(y) != find(r)) {
                    unite(y, r);
                    changed = true;
                }
            }
    }
    std::map<int, std::vector<int>> groups;
    for (int x = 0; x < npts; ++x) groups[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    return out;
}

std::vector<std::pair<std::size_t, int>> OrbitTable::pattern() const {
    std::vector<std::pair<std::size_t, int>> p;
    for (const auto& o : orbits) p.emplace_back(o.size, o.theta_rank);
    return p;
}

int OrbitTable::orbit_of(int point) const {
    for (std::size_t i = 0; i < orbits.size(); ++i)
        if (std::find(orbits[i].members.begin(), orbits[i].members.end(), point) != orbits[i].members.end())
            return int(i);
    return -1;
}

OrbitTable orbit_table(const InvolutionSpec& spec, const FixedGroup& H) {
    require_rank_one(spec);
    auto data = ffalg::group_data(spec.group);
    auto ranks = theta_ranks(spec);
    auto orbs = orbits_of(*data, H.elements);

    OrbitTable t;
    t.tag = spec.tag;
    t.q = spec.group.q;
    t.params = spec.params_string();
    t.total = data->borels.size();
    t.fixed_group_order = H.elements.size();
    t.fixed_group_matches_description = H.matches_description();
    for (auto& members : orbs) {
        Orbit o;
        o.rep = data->borels[members.front()];
        o.size = members.size();
        o.theta_rank = ranks[members.front()];
        for (int m : members)
            if (ranks[m] != o.theta_rank) throw std::logic_error("theta-rank not constant on an orbit");
        o.members = std::move(members);
        t.orbits.push_back(std::move(o));
    }
    // First the orbit of the standard Borel, then orbits of the same rank,
    // then the rest; ties broken by the least representative.
    auto first = std::find_if(t.orbits.begin(), t.orbits.end(), [&](const Orbit& o) {
        return std::find(o.members.begin(), o.members.end(), data->x0) != o.members.end();
    });
    std::iter_swap(t.orbits.begin(), first);
    const int r0 = t.orbits.front().theta_rank;
    std::stable_sort(t.orbits.begin() + 1, t.orbits.end(), [&](const Orbit& a, const Orbit& b) {
        const bool ka = a.theta_rank != r0, kb = b.theta_rank != r0;
        if (ka != kb) return !ka;
        return a.members.front() < b.members.front();
    });
    return t;
}

OrbitTable orbit_table(const InvolutionSpec& spec, std::uint64_t cap) {
    require_rank_one(spec);
    return orbit_table(spec, fixed_group(spec, cap));
}

std::vector<std::pair<std::size_t, int>> expected_pattern(const InvolutionSpec& spec) {
    const std::size_t q = std::size_t(spec.group.q);
    const std::size_t s = std::size_t(sqrt_q(spec.group.q));
    const std::size_t q3 = q * q * q;
    using P = std::vector<std::pair<std::size_t, int>>;
    switch (spec.tag) {
        case CaseTag::SL2_Ii1: return P{{q + 1, 1}};
        case CaseTag::SL2_Ii2: return P{{1, 1}, {1, 1}, {(q - 1) / 2, 0}, {(q - 1) / 2, 0}};
        case CaseTag::SL2_Iii: return P{{s + 1, 1}, {q - s, 0}};
        case CaseTag::SL2_IIi1: return P{{(q - 1) / 2, 0}, {(q - 1) / 2, 0}, {1, 1}, {1, 1}};
        case CaseTag::SL2_IIi2: return P{{(q + 1) / 2, 0}, {(q + 1) / 2, 0}};
        case CaseTag::SL2_IIii: return P{{q - s, 0}, {s + 1, 1}};
        case CaseTag::SU3_Ii1: return P{{q3 + 1, 1}};
        case CaseTag::SU3_Ii2: return P{{q + 1, 1}, {q3 - q, 0}};
        case CaseTag::SU3_Iii: return P{{q + 1, 1}, {(q3 - q) / 2, 0}, {(q3 - q) / 2, 0}};
        case CaseTag::SU3_IIi: return P{{q3 - q, 0}, {q + 1, 1}};
        case CaseTag::SU3_IIii: return P{{(q3 - q) / 2, 0}, {(q3 - q) / 2, 0}, {q + 1, 1}};
        case CaseTag::GLn_orth: {
            if (spec.form.n != 2) throw NotRankOne("closed form only for n = 2");
            const auto& F = *spec.group.F;
            const bool split = F.is_square(F.neg(ffalg::det(F, spec.form)));
            if (!split) return P{{(q + 1) / 2, 0}, {(q + 1) / 2, 0}};
            if (spec.form(0, 0) == 0) return P{{1, 1}, {1, 1}, {(q - 1) / 2, 0}, {(q - 1) / 2, 0}};
            return P{{(q - 1) / 2, 0}, {(q - 1) / 2, 0}, {1, 1}, {1, 1}};
        }
        case CaseTag::GL2_conj: return P{{1, 1}, {1, 1}, {q - 1, 0}};
        case CaseTag::GL2_O: return P{{2, 1}, {(q - 1) / 2, 0}, {(q - 1) / 2, 0}};
    }
    return {};
}

bool standard_and_opposite_share_orbit(const OrbitTable& t, const GroupData& data) {
    return t.orbit_of(data.x0) == t.orbit_of(data.x0_opposite);
}

namespace {

std::vector<std::pair<std::size_t, int>> sorted(std::vector<std::pair<std::size_t, int>> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

CaseRow classification_row(CaseTag tag, int q, std::uint64_t cap) {
    CaseRow row;
    row.tag = tag;
    row.q = q;
    for (const auto& params : admissible_params(tag, q)) {
        auto spec = build_involution(tag, q, params, true, cap);
        auto H = fixed_group(spec, cap);
        auto t = orbit_table(spec, H);
        auto expected = expected_pattern(spec);
        row.realized = true;
        ++row.sweeps;
        if (sorted(t.pattern()) == sorted(expected)) ++row.matches;
        if (t.pattern() == expected) ++row.order_matches;
        if (H.matches_description() && H.closed) ++row.fixed_group_consistent;
        if (!row.table) {
            row.table = t;
            row.expected = expected;
            row.standard_opposite_same_orbit = standard_and_opposite_share_orbit(t, *ffalg::group_data(spec.group, cap));
        }
    }
    return row;
}

std::vector<CaseRow> classification_report(const std::string& kind, int q, std::uint64_t cap) {
    std::vector<CaseRow> rows;
    for (CaseTag tag : cases_for(kind)) rows.push_back(classification_row(tag, q, cap));
    return rows;
}

std::vector<GeneralPattern> general_case_report(const std::string& kind, int q, std::uint64_t cap) {
    const std::size_t Q = std::size_t(q);
    const std::size_t s = std::size_t(sqrt_q(q));
    std::vector<GeneralPattern> pats;
    if (kind == "sl2") {
        pats.push_back({"SL.i", {{Q + 1, 1}}, {}});
        pats.push_back({"SL.i", {{2, 1}, {Q - 1, 0}}, {}});
        pats.push_back({"SL.i", {{(Q + 1) / 2, 0}, {(Q + 1) / 2, 0}}, {}});
        pats.push_back({"SL.i", {{2, 1}, {(Q - 1) / 2, 0}, {(Q - 1) / 2, 0}}, {}});
        pats.push_back({"SL.i", {{1, 1}, {1, 1}, {Q - 1, 0}}, {}});
        pats.push_back({"SL.i", {{1, 1}, {1, 1}, {(Q - 1) / 2, 0}, {(Q - 1) / 2, 0}}, {}});
        if (s) pats.push_back({"SL.ii", {{s + 1, 1}, {Q - s, 0}}, {}});
    } else if (kind == "su3") {
        const std::size_t q3 = Q * Q * Q;
        pats.push_back({"SU.i", {{q3 + 1, 1}}, {}});
        pats.push_back({"SU.i", {{Q + 1, 1}, {q3 - Q, 0}}, {}});
        pats.push_back({"SU.ii", {{Q + 1, 1}, {q3 - Q, 0}}, {}});
        pats.push_back({"SU.ii", {{Q + 1, 1}, {(q3 - Q) / 2, 0}, {(q3 - Q) / 2, 0}}, {}});
    } else {
        throw BadParams("unknown group kind '" + kind + "'");
    }
    // Torus behaviour decides the family: identity/inversion on T for (i),
    // Galois-twisted for (ii) in SL; for SU the families swap the roles.
    auto family_of = [&](CaseTag t) -> std::string {
        switch (t) {
            case CaseTag::SL2_Iii:
            case CaseTag::SL2_IIii: return "SL.ii";
            case CaseTag::SU3_Ii1:
            case CaseTag::SU3_Ii2:
            case CaseTag::SU3_IIi: return "SU.i";
            case CaseTag::SU3_Iii:
            case CaseTag::SU3_IIii: return "SU.ii";
            default: return "SL.i";
        }
    };
    std::vector<CaseTag> tags = cases_for(kind);
    if (kind == "sl2") {
        tags.push_back(CaseTag::GLn_orth);
        tags.push_back(CaseTag::GL2_conj);
        tags.push_back(CaseTag::GL2_O);
    }
    for (CaseTag tag : tags) {
        for (const auto& params : admissible_params(tag, q)) {
            auto spec = build_involution(tag, q, params, true, cap);
            auto t = orbit_table(spec, cap);
            auto got = sorted(t.pattern());
            for (auto& pat : pats) {
                if (pat.family != family_of(tag) || sorted(pat.pattern) != got) continue;
                const auto name = to_string(tag);
                if (std::find(pat.realized_by.begin(), pat.realized_by.end(), name) == pat.realized_by.end())
                    pat.realized_by.push_back(name);
            }
        }
    }
    return pats;
}

}  // namespace steinberg::rankone
