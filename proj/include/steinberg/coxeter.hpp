#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "steinberg/error.hpp"

namespace steinberg::coxeter {

// Integer affine map x -> M x + t on Z^d.
struct AffineMap {
    int d = 0;
    std::vector<std::int64_t> m;  // row-major d x d
    std::vector<std::int64_t> t;

    static AffineMap identity(int d);
    AffineMap compose(const AffineMap& o) const;  // (this o o)(x) = this(o(x))
    AffineMap inverse() const;                    // linear part is orthogonal
    std::vector<std::int64_t> operator()(const std::vector<std::int64_t>& x) const;
    bool operator==(const AffineMap& o) const { return m == o.m && t == o.t; }
};

struct AffineMapHash {
    std::size_t operator()(const AffineMap& a) const noexcept;
};

enum class Family { A, B, C, D };

struct CoxeterSystem {
    Family family = Family::C;
    int rank = 1;  // number of generators is rank + 1; generator 0 is affine
    std::string name;
    std::vector<AffineMap> gens;
    std::vector<std::vector<int>> m;  // Coxeter matrix; 0 encodes infinity

    int size() const { return int(gens.size()); }
};

// "A<r>" (affine A_r, r >= 1), "B<r>" (r >= 3), "C<r>" or "CB<r>" (r >= 1),
// "D<r>" (r >= 4); case-insensitive. UnsupportedType otherwise.
CoxeterSystem build_system(const std::string& type);
CoxeterSystem build_system(Family f, int rank);

// Order of s_i s_j in the realization, 0 if larger than 6.
int realized_order(const CoxeterSystem& sys, int i, int j);

// BFS store of group elements by length.
class ShellStore {
public:
    explicit ShellStore(const CoxeterSystem& sys);

    const CoxeterSystem& system() const { return sys_; }
    void extend_to(int L);
    int depth() const { return int(shells_.size()) - 1; }
    std::vector<std::size_t> counts() const;
    const std::vector<int>& shell(int l) const { return shells_.at(l); }
    std::size_t size() const { return elems_.size(); }

    const AffineMap& element(int id) const { return elems_.at(id); }
    int length(int id) const { return len_.at(id); }
    int parent(int id) const { return parent_.at(id); }
    int last_generator(int id) const { return gen_.at(id); }
    // Id of the element or -1 when it is not stored.
    int find(const AffineMap& a) const;
    // Id of w.s (right multiplication); extends the store if needed.
    int right_mul(int id, int s);
    // Reduced word read off the BFS tree.
    std::vector<int> reduced_word(int id) const;
    // Reduced word built by choosing a random right descent at every step.
    std::vector<int> random_reduced_word(int id, std::uint64_t seed);
    // Id of the element with the given word, extending the store as needed.
    int element_of_word(const std::vector<int>& word);

private:
    CoxeterSystem sys_;
    std::vector<AffineMap> elems_;
    std::vector<int> len_, parent_, gen_;
    std::vector<std::vector<int>> shells_;
    std::unordered_map<AffineMap, int, AffineMapHash> index_;
};

std::vector<std::size_t> enumerate_shells(const CoxeterSystem& sys, int L);

// l(w1^-1 w2).
int gallery_distance(ShellStore& store, int w1, int w2);

struct WallParams {
    std::vector<int> eps;      // +1 / -1 per generator
    std::vector<mpq_class> m;  // |m| < 1
    std::vector<std::optional<mpz_class>> n_factor;
    std::vector<std::optional<mpz_class>> Q_factor;
};

// BadParams when |m_s| >= 1, a sign is not +-1, or m/eps differ across an odd bond.
void validate(const CoxeterSystem& sys, const WallParams& p);

// Product of eps_s m_s along a word.
mpq_class word_weight(const WallParams& p, const std::vector<int>& word);

struct PoincareResult {
    int L = 0;
    std::vector<std::size_t> shell_counts;
    std::vector<mpq_class> shell_sums;
    mpq_class partial;
};

// Sum over all elements of length <= L.
PoincareResult poincare_partial(ShellStore& store, const WallParams& p, int L);
PoincareResult poincare_partial(const CoxeterSystem& sys, const WallParams& p, int L);
// Stops once three consecutive shell sums satisfy |s_l| < tol |partial|, or at max_L.
PoincareResult poincare_until(const CoxeterSystem& sys, const WallParams& p, double tol, int max_L = 2000);

// (1 + ms)(1 + mt) / (1 - ms mt); BadParams unless |ms|, |mt| < 1.
mpq_class poincare_closed_rank1(const mpq_class& ms, const mpq_class& mt);

// Wall parameters of the GL3/SO3 example on CB1.
WallParams wall_params_gl3_so3(int q);

// (1 - 1/q)(1 - 1/q^2) / (1 - 1/q^3)
mpq_class gl3_so3_closed_form(int q);

}  // namespace steinberg::coxeter
