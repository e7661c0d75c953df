#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "steinberg/ffalg.hpp"
#include "steinberg/rankone.hpp"

namespace steinberg::localgraph {

using ffalg::BorelPoint;
using ffalg::Elt;
using ffalg::Mat;

enum class PanelPairType { Skew, Trivial, Even, Upper, Lower };
std::string to_string(PanelPairType t);

// orbits: (size, theta-rank) of the orbits of Ch_D; r the ambient rank.
PanelPairType classify_panel_pair(const std::vector<std::pair<std::size_t, int>>& orbits, int r, std::size_t Q_D,
                                  bool hyperplane_theta_stable, bool torus_split);

// f0 . prod (-Q_i)^-1
mpq_class skew_propagation(const mpq_class& f0, const std::vector<long long>& Qs);

// Quadratic character of the fixed group, values +1 / -1.
using Character = std::function<int(const Mat&)>;
Character trivial_character();
// h -> Legendre symbol of h(0,0); a character on diagonal groups only.
Character corner_character(ffalg::FieldPtr F);

// Cochain problem: unknown per H_chi-orbit of theta-split chambers.
struct HarmonicProblem {
    std::size_t num_chambers = 0;
    std::vector<int> label;  // H_chi-orbit of each chamber, -1 if not theta-split
    int num_orbits = 0;
    // x_a + x_b = 0 from the action of an element with chi = -1 (a == b allowed).
    std::vector<std::pair<int, int>> sign_relations;
    std::vector<std::vector<int>> panels;  // chamber indices
    std::size_t panel_size = 0;            // Q_D + 1
};

struct Edge {
    int u = 0, v = 0;
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
};

struct LocalGraph {
    std::vector<std::size_t> vertex_sizes;
    std::vector<Edge> edges;  // u < v
    std::vector<int> loops;   // vertex per loop
    // Panels whose theta-split neighbours meet more than two vertices.
    std::size_t violations = 0;
    // Per panel orbit with theta-split neighbours: number of vertices met.
    std::vector<int> panel_orbit_counts;
};

struct GammaCheck {
    bool connected = true;
    bool bipartite = true;
};

GammaCheck check_gamma(const LocalGraph& g);
int harmonic_dimension(const HarmonicProblem& hp);  // InconsistentIncidence

struct LocalModel {
    std::string name;
    int q = 0;
    std::size_t fixed_group_order = 0;
    std::size_t chambers = 0;
    std::size_t theta_split = 0;
    LocalGraph graph;
    HarmonicProblem problem;
    GammaCheck check;
    int harmonic_dim = 0;
    // Every panel with theta-split neighbours meets exactly two vertices.
    bool two_orbit_condition = false;
    // Two-orbit condition holds but the graph is not bipartite.
    bool conjecture_counterexample = false;
};

// Rank-one local model: Borel points of the group, a single panel.
LocalModel build_gamma(const rankone::InvolutionSpec& spec, const Character& chi = trivial_character(),
                       std::uint64_t cap = ffalg::default_cap(), std::uint64_t seed = 1);

// GL_n(F_q), n <= 3, theta(g) = eps^-1 g^-T eps, H = SO(eps); chambers are full flags.
LocalModel gln_orth_local(int n, int q, const Mat& eps, const Character& chi = trivial_character(),
                          std::uint64_t cap = ffalg::default_cap(), std::uint64_t seed = 1);

// Forms used for the orthogonal sweep: identity, diag(1,..,1,e0), antidiagonal.
std::vector<Mat> orthogonal_forms(int n, int q);

// Image of a full flag under the orthogonal involution: V'_i = (V_{n-i})^perp.
BorelPoint orth_flag_image(const ffalg::FiniteField& F, const Mat& eps, const BorelPoint& b);

// |Stab(x) cap Stab(y)| == torus order, counted inside the stabiliser of the
// standard point after transporting x there.
bool is_theta_split(const ffalg::GroupData& data, int x, const BorelPoint& theta_x);

}  // namespace steinberg::localgraph
