#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "steinberg/coxeter.hpp"
#include "steinberg/error.hpp"
#include "steinberg/localgraph.hpp"
#include "steinberg/padicforms.hpp"
#include "steinberg/rankone.hpp"

namespace py = pybind11;
using namespace steinberg;

namespace {

py::tuple frac(const mpq_class& x) {
    return py::make_tuple(py::int_(py::str(x.get_num().get_str())), py::int_(py::str(x.get_den().get_str())));
}

padic::Invariants target_of(int n, const std::string& target, int p) {
    if (target == "split") return padic::split_invariants(n, p);
    for (const auto& inv : padic::realizable_invariants(n, p))
        if (padic::orthogonal_type(n, inv, p) == padic::OrthType::QuasiSplit && target == "quasi-split") return inv;
    for (const auto& inv : padic::realizable_invariants(n, p))
        if (padic::orthogonal_type(n, inv, p) == padic::OrthType::NonQuasiSplit && target == "non-quasi-split")
            return inv;
    throw BadTarget("no form of type " + target + " in dimension " + std::to_string(n));
}

py::dict rankone_row(const rankone::CaseRow& r) {
    py::dict d;
    d["case"] = rankone::to_string(r.tag);
    d["q"] = r.q;
    d["realized"] = r.realized;
    d["sweeps"] = r.sweeps;
    d["matches"] = r.matches;
    d["order_matches"] = r.order_matches;
    d["expected"] = r.expected;
    if (r.table) {
        d["params"] = r.table->params;
        d["pattern"] = r.table->pattern();
        d["fixed_group_order"] = r.table->fixed_group_order;
    }
    d["standard_opposite_same_orbit"] = r.standard_opposite_same_orbit;
    d["ok"] = r.ok();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "steinberg_kit core";
    py::register_exception<Error>(m, "SteinbergError");

    m.def(
        "rankone_orbits",
        [](const std::string& kind, int q, const std::string& case_tag) {
            py::list out;
            if (!case_tag.empty()) {
                out.append(rankone_row(rankone::classification_row(rankone::parse_case(case_tag), q)));
                return out;
            }
            for (const auto& r : rankone::classification_report(kind, q)) out.append(rankone_row(r));
            return out;
        },
        py::arg("kind"), py::arg("q"), py::arg("case") = "");

    m.def(
        "square_class",
        [](long long num, long long den, int p) {
            auto c = padic::square_class(mpq_class(mpz_class(std::to_string(num)), mpz_class(std::to_string(den))), p);
            return c.to_string();
        },
        py::arg("num"), py::arg("den") = 1, py::arg("p"));

    m.def(
        "hilbert_symbol",
        [](int a_index, int b_index, int p) {
            return padic::hilbert_symbol(padic::class_of_index(a_index, p), padic::class_of_index(b_index, p));
        },
        py::arg("a_index"), py::arg("b_index"), py::arg("p"),
        "Indices 0..3 stand for 1, e0, pi, e0*pi.");

    m.def(
        "quadclass",
        [](const std::string& form, int p) {
            auto dg = padic::diagonalize(padic::parse_matrix(form), p);
            auto inv = padic::invariants(dg.form);
            py::dict d;
            std::vector<std::string> entries;
            for (const auto& e : dg.form.entries) entries.push_back(e.to_string());
            d["entries"] = entries;
            d["disc"] = inv.disc.to_string();
            d["hasse"] = inv.hasse;
            d["type"] = padic::to_string(padic::orthogonal_type(dg.form.n(), inv, p));
            return d;
        },
        py::arg("form"), py::arg("p"));

    m.def(
        "orthogonal_type",
        [](int n, int disc_index, int hasse, int p) {
            return padic::to_string(padic::orthogonal_type(n, {padic::class_of_index(disc_index, p), hasse}, p));
        },
        py::arg("n"), py::arg("disc_index"), py::arg("hasse"), py::arg("p"));

    m.def(
        "distinction_dimension",
        [](int n, const std::string& target, const std::string& subgroup, int p) {
            auto h = subgroup == "SO" ? padic::Subgroup::SO : padic::Subgroup::O;
            if (subgroup != "SO" && subgroup != "O") throw BadParams("subgroup must be SO or O");
            return padic::distinction_dimension(n, target_of(n, target, p), h, p);
        },
        py::arg("n"), py::arg("target") = "split", py::arg("subgroup") = "SO", py::arg("p") = 5);

    m.def("sum_over_classes", &padic::sum_over_classes, py::arg("n"), py::arg("p") = 5);
    m.def("epsilon_G", &padic::epsilon_G, py::arg("n"), py::arg("det_valuation"));

    m.def(
        "shell_counts",
        [](const std::string& type, int L) { return coxeter::enumerate_shells(coxeter::build_system(type), L); },
        py::arg("type"), py::arg("L"));

    m.def(
        "poincare_gl3_so3",
        [](int q, int L) {
            auto sys = coxeter::build_system("CB1");
            auto r = coxeter::poincare_partial(sys, coxeter::wall_params_gl3_so3(q), L);
            py::dict d;
            d["L"] = r.L;
            d["shell_counts"] = r.shell_counts;
            d["partial"] = frac(r.partial);
            d["closed_form"] = frac(coxeter::gl3_so3_closed_form(q));
            return d;
        },
        py::arg("q"), py::arg("L") = 60);

    m.def(
        "graph",
        [](const std::string& case_tag, int q) {
            auto spec = rankone::build_involution(rankone::parse_case(case_tag), q);
            auto lm = localgraph::build_gamma(spec);
            py::dict d;
            d["vertices"] = lm.graph.vertex_sizes;
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : lm.graph.edges) edges.emplace_back(e.u, e.v);
            d["edges"] = edges;
            d["loops"] = lm.graph.loops;
            d["connected"] = lm.check.connected;
            d["bipartite"] = lm.check.bipartite;
            d["harmonic_dim"] = lm.harmonic_dim;
            return d;
        },
        py::arg("case"), py::arg("q"));
}
