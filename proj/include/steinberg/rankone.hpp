#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steinberg/ffalg.hpp"

namespace steinberg::rankone {

using ffalg::Elt;
using ffalg::Mat;

// Cases of the rank-one classification. GL2_conj and GL2_O are auxiliary
// involutions of GL2 used only to realize general-case orbit patterns.
enum class CaseTag {
    SL2_Ii1,
    SL2_Ii2,
    SL2_Iii,
    SL2_IIi1,
    SL2_IIi2,
    SL2_IIii,
    SU3_Ii1,
    SU3_Ii2,
    SU3_Iii,
    SU3_IIi,
    SU3_IIii,
    GLn_orth,
    GL2_conj,
    GL2_O,
};

std::string to_string(CaseTag t);
CaseTag parse_case(const std::string& s);  // BadParams on unknown tags
std::vector<CaseTag> cases_for(const std::string& kind);  // "sl2" or "su3"
bool is_su3_case(CaseTag t);

struct InvolutionParams {
    std::optional<Elt> x;
    std::optional<Elt> eps;
    std::optional<Elt> delta;
    std::optional<Mat> form;
};

struct InvolutionSpec {
    enum class Twist { None, Frob, InvTranspose, FrobInvTranspose };

    ffalg::GroupSpec group;
    CaseTag tag = CaseTag::SL2_Ii1;
    Elt x = 0, eps = 0, delta = 0;
    Mat form;
    // theta(g) = left . twist(g) . right
    Mat left, right;
    Twist twist = Twist::None;
    int twist_power = 0;

    Mat apply(const Mat& g) const;
    std::string params_string() const;
};

// Builds theta for the case over GF(q) (SU3 cases: q is the size of l, the
// matrices live over l2). For GLn_orth/GL2_O the form fixes n.
InvolutionSpec build_involution(CaseTag tag, int q, const InvolutionParams& params = {}, bool verify = true,
                                std::uint64_t cap = ffalg::default_cap());

// Every admissible parameter choice for the case at q (empty when the case
// has none, e.g. Galois cases at non-square q).
std::vector<InvolutionParams> admissible_params(CaseTag tag, int q);

struct FixedGroup {
    CaseTag tag = CaseTag::SL2_Ii1;
    std::vector<Mat> elements;
    std::string description;
    std::uint64_t description_order = 0;
    bool closed = false;
    bool matches_description() const { return elements.size() == description_order; }
};

FixedGroup fixed_group(const InvolutionSpec& spec, std::uint64_t cap = ffalg::default_cap());

// 1 iff theta(B) == B for the Borel subgroup B fixing b. Needs a rank-one group.
int theta_rank_of_borel(const InvolutionSpec& spec, const ffalg::BorelPoint& b);
// theta-rank of every Borel point, indexed like group_data(...)->borels.
std::vector<int> theta_ranks(const InvolutionSpec& spec);
// Index of the point fixed by theta(Stab(b)) for each Borel point b.
std::vector<int> theta_images(const InvolutionSpec& spec);

struct Orbit {
    ffalg::BorelPoint rep;
    std::vector<int> members;  // indices into the group's Borel list
    std::size_t size = 0;
    int theta_rank = 0;
};

struct OrbitTable {
    CaseTag tag = CaseTag::SL2_Ii1;
    int q = 0;
    std::string params;
    std::vector<Orbit> orbits;
    std::size_t total = 0;
    std::uint64_t fixed_group_order = 0;
    bool fixed_group_matches_description = false;

    std::vector<std::pair<std::size_t, int>> pattern() const;
    int orbit_of(int point) const;
};

// Orbits of a set of matrices (a group) on the Borel points of G; generic helper.
std::vector<std::vector<int>> orbits_of(const ffalg::GroupData& data, const std::vector<Mat>& group);

OrbitTable orbit_table(const InvolutionSpec& spec, std::uint64_t cap = ffalg::default_cap());
OrbitTable orbit_table(const InvolutionSpec& spec, const FixedGroup& H);

// Closed-form (size, theta-rank) list in table order.
std::vector<std::pair<std::size_t, int>> expected_pattern(const InvolutionSpec& spec);

// Standard Borel and its opposite share an H-orbit.
bool standard_and_opposite_share_orbit(const OrbitTable& t, const ffalg::GroupData& data);

struct CaseRow {
    CaseTag tag = CaseTag::SL2_Ii1;
    int q = 0;
    bool realized = false;
    std::size_t sweeps = 0;
    std::size_t matches = 0;        // multiset equality with the closed form
    std::size_t order_matches = 0;  // sequence equality (table order)
    std::size_t fixed_group_consistent = 0;
    std::vector<std::pair<std::size_t, int>> expected;
    std::optional<OrbitTable> table;  // first parameter choice
    bool standard_opposite_same_orbit = false;  // for the first parameter choice
    bool ok() const {
        return !realized || (matches == sweeps && order_matches == sweeps && fixed_group_consistent == sweeps);
    }
};

// Sweeps every admissible parameter of one case.
CaseRow classification_row(CaseTag tag, int q, std::uint64_t cap = ffalg::default_cap());

std::vector<CaseRow> classification_report(const std::string& kind, int q,
                                           std::uint64_t cap = ffalg::default_cap());

struct GeneralPattern {
    std::string family;  // "SL.i", "SL.ii", "SU.i", "SU.ii"
    std::vector<std::pair<std::size_t, int>> pattern;
    std::vector<std::string> realized_by;
};

// General-case patterns at q together with the case tags whose orbit
// multisets realize them; unrealized patterns keep an empty list.
std::vector<GeneralPattern> general_case_report(const std::string& kind, int q,
                                                std::uint64_t cap = ffalg::default_cap());

}  // namespace steinberg::rankone
