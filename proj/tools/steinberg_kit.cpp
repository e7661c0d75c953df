// steinberg_kit: command-line front end for the finite-field, Coxeter,
// p-adic and local-graph computations.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "steinberg/coxeter.hpp"
#include "steinberg/ffalg.hpp"
#include "steinberg/localgraph.hpp"
#include "steinberg/padicforms.hpp"
#include "steinberg/rankone.hpp"

using json = nlohmann::ordered_json;
using namespace steinberg;
using steinberg::ffalg::Elt;

namespace {

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    json data;
    Table table;
    bool ok = true;
};

struct Common {
    std::string format = "table";
    std::string out;
    long long cap = 0;
    std::uint64_t seed = 1;
    bool verify = false;

    std::uint64_t cap_value() const { return cap > 0 ? std::uint64_t(cap) : ffalg::default_cap(); }
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

template <class T>
std::string join_nums(const std::vector<T>& v, const std::string& sep = " ") {
    std::vector<std::string> s;
    for (const auto& x : v) s.push_back(std::to_string(x));
    return join(s, sep);
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

std::string render(const Output& o, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        os << o.data.dump(2) << "\n";
    } else if (format == "csv") {
        std::vector<std::string> h;
        for (const auto& x : o.table.headers) h.push_back(csv_cell(x));
        os << join(h, ",") << "\n";
        for (const auto& row : o.table.rows) {
            std::vector<std::string> r;
            for (const auto& x : row) r.push_back(csv_cell(x));
            os << join(r, ",") << "\n";
        }
    } else {
        std::vector<std::size_t> w(o.table.headers.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = o.table.headers[i].size();
        for (const auto& row : o.table.rows)
            for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << (i ? "  " : "") << std::left << std::setw(int(w[i])) << r[i];
            os << "\n";
        };
        line(o.table.headers);
        std::vector<std::string> rule;
        for (auto x : w) rule.push_back(std::string(x, '-'));
        line(rule);
        for (const auto& row : o.table.rows) line(row);
    }
    return os.str();
}

std::string qstr(const mpq_class& x) { return x.get_str(); }

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

// ---- rankone-orbits ----

struct RankOneArgs {
    std::string kind = "sl2";
    int q = 0;
    std::string case_tag;
};

Output run_rankone(const RankOneArgs& a, const Common& c) {
    std::vector<rankone::CaseTag> tags;
    if (a.case_tag.empty()) {
        tags = rankone::cases_for(a.kind);
    } else {
        tags.push_back(rankone::parse_case(a.case_tag));
    }
    Output o;
    o.data = json::array();
    o.table.headers = {"case", "q", "params", "orbit_sizes", "theta_ranks", "fixed_group_order", "sweeps", "ok"};
    for (auto tag : tags) {
        auto row = rankone::classification_row(tag, a.q, c.cap_value());
        json j;
        j["case"] = rankone::to_string(tag);
        j["q"] = a.q;
        j["realized"] = row.realized;
        std::vector<std::size_t> sizes;
        std::vector<int> ranks;
        std::string params;
        std::uint64_t order = 0;
        if (row.table) {
            for (const auto& orb : row.table->orbits) {
                sizes.push_back(orb.size);
                ranks.push_back(orb.theta_rank);
            }
            params = row.table->params;
            order = row.table->fixed_group_order;
        }
        j["params"] = params;
        j["orbit_sizes"] = sizes;
        j["theta_ranks"] = ranks;
        j["fixed_group_order"] = order;
        j["sweeps"] = row.sweeps;
        j["matches"] = row.matches;
        j["order_matches"] = row.order_matches;
        j["fixed_group_consistent"] = row.fixed_group_consistent;
        j["standard_opposite_same_orbit"] = row.standard_opposite_same_orbit;
        j["ok"] = row.ok();
        if (!row.ok()) o.ok = false;
        o.data.push_back(j);
        o.table.rows.push_back({rankone::to_string(tag), std::to_string(a.q), row.realized ? params : "(none)",
                                join_nums(sizes), join_nums(ranks), std::to_string(order),
                                std::to_string(row.sweeps), row.ok() ? "yes" : "NO"});
    }
    return o;
}

// ---- poincare ----

struct PoincareArgs {
    std::string type = "cb1";
    int q = 0;
    double tol = 1e-12;
    int L = -1;
    std::string m;
    std::string eps;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

mpq_class parse_rational(const std::string& s) {
    mpq_class v;
    if (s.empty() || v.set_str(s, 10) != 0 || v.get_den() == 0) throw BadParams("bad rational '" + s + "'");
    v.canonicalize();
    return v;
}

Output run_poincare(const PoincareArgs& a, const Common&) {
    auto sys = coxeter::build_system(a.type);
    coxeter::WallParams p;
    std::optional<mpq_class> closed;
    if (!a.m.empty()) {
        for (const auto& s : split(a.m, ',')) p.m.push_back(parse_rational(s));
        if (a.eps.empty()) {
            p.eps.assign(p.m.size(), 1);
        } else {
            for (const auto& s : split(a.eps, ',')) {
                if (s != "1" && s != "+1" && s != "-1") throw BadParams("signs must be +1 or -1");
                p.eps.push_back(std::stoi(s));
            }
        }
        if (sys.size() == 2) {
            coxeter::validate(sys, p);
            closed = coxeter::poincare_closed_rank1(p.eps[0] * p.m[0], p.eps[1] * p.m[1]);
        }
    } else {
        if (sys.size() != 2) throw BadParams("--m is required for types other than cb1");
        if (a.q <= 0) throw BadParams("--q or --m is required");
        p = coxeter::wall_params_gl3_so3(a.q);
        closed = coxeter::gl3_so3_closed_form(a.q);
    }
    const auto r = a.L >= 0 ? coxeter::poincare_partial(sys, p, a.L) : coxeter::poincare_until(sys, p, a.tol);
    Output o;
    o.data["type"] = sys.name;
    o.data["L"] = r.L;
    o.data["shell_counts"] = r.shell_counts;
    o.data["partial_sum_num"] = r.partial.get_num().get_str();
    o.data["partial_sum_den"] = r.partial.get_den().get_str();
    o.data["partial_sum"] = r.partial.get_d();
    o.data["closed_form"] = closed ? json(qstr(*closed)) : json(nullptr);
    double err = 0;
    if (closed) {
        err = mpq_class(abs(r.partial - *closed)).get_d();
        o.data["abs_error"] = err;
        if (!(err < a.tol)) o.ok = false;
    }
    o.data["positive"] = r.partial > 0;
    if (!(r.partial > 0)) o.ok = false;
    o.table.headers = {"type", "L", "partial_sum", "closed_form", "abs_error", "positive"};
    o.table.rows.push_back({sys.name, std::to_string(r.L), fmt_double(r.partial.get_d()),
                            closed ? qstr(*closed) : "-", closed ? fmt_double(err) : "-",
                            r.partial > 0 ? "yes" : "no"});
    return o;
}

// ---- p-adic ----

json classes_json(const std::vector<padic::Quintuple>& cl) {
    json a = json::array();
    for (const auto& t : cl)
        a.push_back({{"n11", t.n11}, {"n12", t.n12}, {"n21", t.n21}, {"n22", t.n22}, {"r", t.r}});
    return a;
}

std::string classes_text(const std::vector<padic::Quintuple>& cl) {
    std::vector<std::string> s;
    for (const auto& t : cl)
        s.push_back("(" + std::to_string(t.n11) + "," + std::to_string(t.n12) + "," + std::to_string(t.n21) + "," +
                    std::to_string(t.n22) + "," + std::to_string(t.r) + ")");
    return join(s, " ");
}

json invariant_row(int n, const padic::Invariants& inv, int p, Table& table) {
    const auto type = padic::orthogonal_type(n, inv, p);
    const auto cl = padic::apartment_classes(n, inv, p);
    const int dso = padic::distinction_dimension(n, inv, padic::Subgroup::SO, p);
    const int dO = padic::distinction_dimension(n, inv, padic::Subgroup::O, p);
    json j;
    j["n"] = n;
    j["type"] = padic::to_string(type);
    j["disc"] = inv.disc.to_string();
    j["hasse"] = inv.hasse;
    j["classes"] = classes_json(cl);
    j["dim_SO"] = dso;
    j["dim_O"] = dO;
    table.rows.push_back({std::to_string(n), padic::to_string(type), inv.disc.to_string(), std::to_string(inv.hasse),
                          classes_text(cl), std::to_string(dso), std::to_string(dO)});
    return j;
}

Output run_quadclass(int p, const std::string& form, const Common&) {
    const auto A = padic::parse_matrix(form);
    const auto d = padic::diagonalize(A, p);
    const auto inv = padic::invariants(d.form);
    Output o;
    o.table.headers = {"n", "type", "disc", "hasse", "classes", "dim_SO", "dim_O"};
    o.data = invariant_row(d.form.n(), inv, p, o.table);
    std::vector<std::string> diag;
    for (const auto& x : d.diagonal) diag.push_back(qstr(x));
    o.data["diagonal"] = diag;
    return o;
}

Output run_apartments(int n, int p, const Common&) {
    if (n < 1) throw BadParams("--n must be >= 1");
    Output o;
    o.data = json::array();
    o.table.headers = {"n", "type", "disc", "hasse", "classes", "dim_SO", "dim_O"};
    for (const auto& inv : padic::realizable_invariants(n, p)) o.data.push_back(invariant_row(n, inv, p, o.table));
    return o;
}

Output run_dimension(int n_max, int p, const Common&) {
    if (n_max < 1) throw BadParams("--n-max must be >= 1");
    Output o;
    o.data = json::array();
    o.table.headers = {"n", "type", "disc", "hasse", "dim_SO", "dim_O", "closed_SO", "closed_O", "ok"};
    for (int n = 1; n <= n_max; ++n)
        for (const auto& inv : padic::realizable_invariants(n, p)) {
            const auto type = padic::orthogonal_type(n, inv, p);
            const int dso = padic::distinction_dimension(n, inv, padic::Subgroup::SO, p);
            const int dO = padic::distinction_dimension(n, inv, padic::Subgroup::O, p);
            const int cso = padic::closed_form_dimension(n, type, padic::Subgroup::SO);
            const int cO = padic::closed_form_dimension(n, type, padic::Subgroup::O);
            const bool ok = dso == cso && dO == cO;
            if (!ok) o.ok = false;
            o.data.push_back({{"n", n},
                              {"type", padic::to_string(type)},
                              {"disc", inv.disc.to_string()},
                              {"hasse", inv.hasse},
                              {"dim_SO", dso},
                              {"dim_O", dO},
                              {"closed_SO", cso},
                              {"closed_O", cO},
                              {"ok", ok}});
            o.table.rows.push_back({std::to_string(n), padic::to_string(type), inv.disc.to_string(),
                                    std::to_string(inv.hasse), std::to_string(dso), std::to_string(dO),
                                    std::to_string(cso), std::to_string(cO), ok ? "yes" : "NO"});
        }
    return o;
}

Output run_sum_check(int n_max, int p, const Common&) {
    if (n_max < 1) throw BadParams("--n-max must be >= 1");
    Output o;
    o.data = json::array();
    o.table.headers = {"n", "classes", "sum", "expected", "ok"};
    for (int n = 1; n <= n_max; ++n) {
        const int s = padic::sum_over_classes(n, p);
        const int e = (n + 1) * (n + 1);
        const std::size_t k = padic::realizable_invariants(n, p).size();
        if (s != e) o.ok = false;
        o.data.push_back({{"n", n}, {"classes", k}, {"sum", s}, {"expected", e}, {"ok", s == e}});
        o.table.rows.push_back(
            {std::to_string(n), std::to_string(k), std::to_string(s), std::to_string(e), s == e ? "yes" : "NO"});
    }
    return o;
}

// ---- graph ----

struct GraphArgs {
    std::string case_tag;
    int q = 0;
    int n = 2;
    std::string form;
    std::string chi = "trivial";
    long long x = -1;
    long long eps = -1;
};

ffalg::Mat parse_field_matrix(const std::string& text, const ffalg::FiniteField& F) {
    std::vector<std::vector<Elt>> rows;
    for (const auto& r : split(text, ';')) {
        std::vector<Elt> row;
        for (const auto& cell : split(r, ',')) {
            long long v;
            try {
                std::size_t pos = 0;
                v = std::stoll(cell, &pos);
                if (pos != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw BadParams("bad form entry '" + cell + "'");
            }
            if (v < 0 || v >= F.q()) throw BadParams("form entry " + cell + " is not a field element index");
            row.push_back(Elt(v));
        }
        rows.push_back(row);
    }
    const std::size_t n = rows.size();
    if (n == 0 || n > 4) throw BadParams("form must be 1x1 to 4x4");
    for (const auto& r : rows)
        if (r.size() != n) throw BadParams("form is not square");
    return ffalg::from_rows(rows);
}

Output graph_output(const localgraph::LocalModel& m, const std::string& tag) {
    Output o;
    o.data["case"] = tag;
    o.data["model"] = m.name;
    o.data["q"] = m.q;
    o.data["vertices"] = m.graph.vertex_sizes;
    o.data["edges"] = m.graph.edges.size();
    o.data["loops"] = m.graph.loops.size();
    o.data["connected"] = m.check.connected;
    o.data["bipartite"] = m.check.bipartite;
    o.data["harmonic_dim"] = m.harmonic_dim;
    o.data["fixed_group_order"] = m.fixed_group_order;
    o.data["theta_split_chambers"] = m.theta_split;
    o.data["panel_orbit_counts"] = m.graph.panel_orbit_counts;
    o.data["two_orbit_condition"] = m.two_orbit_condition;
    o.data["conjecture_counterexample"] = m.conjecture_counterexample;
    o.table.headers = {"case", "q", "vertices", "edges", "loops", "connected", "bipartite", "harmonic_dim"};
    o.table.rows.push_back({tag, std::to_string(m.q), join_nums(m.graph.vertex_sizes),
                            std::to_string(m.graph.edges.size()), std::to_string(m.graph.loops.size()),
                            m.check.connected ? "yes" : "no", m.check.bipartite ? "yes" : "no",
                            std::to_string(m.harmonic_dim)});
    // Expected shape: connected; dimension 1 on bipartite models, 0 on looped ones.
    if (!m.check.connected) o.ok = false;
    if (m.theta_split > 0 && m.harmonic_dim != (m.check.bipartite ? 1 : 0)) o.ok = false;
    return o;
}

Output run_graph(const GraphArgs& a, const Common& c) {
    if (a.case_tag.empty()) throw BadParams("--case is required");
    const auto tag = rankone::parse_case(a.case_tag);
    localgraph::Character chi;
    auto pick_chi = [&](ffalg::FieldPtr F) {
        if (a.chi == "trivial") return localgraph::trivial_character();
        if (a.chi == "corner") return localgraph::corner_character(F);
        throw BadParams("--chi must be trivial or corner");
    };
    if (tag == rankone::CaseTag::GLn_orth && a.n != 2) {
        auto F = ffalg::field(a.q);
        const auto eps = a.form.empty() ? ffalg::antidiagonal(a.n) : parse_field_matrix(a.form, *F);
        auto m = localgraph::gln_orth_local(a.n, a.q, eps, pick_chi(F), c.cap_value(), c.seed);
        return graph_output(m, a.case_tag);
    }
    rankone::InvolutionParams params;
    if (a.x >= 0) params.x = Elt(a.x);
    if (a.eps >= 0) params.eps = Elt(a.eps);
    if (!a.form.empty()) {
        const int fq = rankone::is_su3_case(tag) ? a.q * a.q : a.q;
        params.form = parse_field_matrix(a.form, *ffalg::field(fq));
    }
    auto spec = rankone::build_involution(tag, a.q, params, true, c.cap_value());
    auto m = localgraph::build_gamma(spec, pick_chi(spec.group.F), c.cap_value(), c.seed);
    return graph_output(m, a.case_tag);
}

int exit_code_for(const Error& e) {
    static const std::set<std::string> usage = {"BadParams",  "BadField",  "UnsupportedType", "BadTarget",
                                                "SmallN",     "ZeroInput", "PrimeMismatch",   "NotRankOne",
                                                "BadCharacter", "Singular"};
    return usage.count(e.kind()) ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steinberg_kit: Steinberg-distinction computations at desk scale"};
    app.require_subcommand(1);
    Common common;

    auto add_common = [&](CLI::App* sub, bool with_verify) {
        sub->add_option("--format", common.format, "Output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--out", common.out, "Write output to this path");
        sub->add_option("--cap", common.cap, "Enumeration cap (default: STEINBERG_KIT_CAP or 1e7)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", common.seed, "Seed for randomized checks");
        if (with_verify) sub->add_flag("--verify", common.verify, "Exit 1 on any mismatch");
    };

    RankOneArgs ro;
    auto* s_ro = app.add_subcommand("rankone-orbits", "Orbit tables of the rank-one involutions");
    s_ro->add_option("--kind", ro.kind, "sl2 or su3")->check(CLI::IsMember({"sl2", "su3"}));
    s_ro->add_option("--q", ro.q, "Field size (odd prime power)")->required();
    s_ro->add_option("--case", ro.case_tag, "Single case tag, e.g. SL2-II.i.1");
    add_common(s_ro, true);

    PoincareArgs pa;
    auto* s_po = app.add_subcommand("poincare", "Partial sums of a signed Poincare series");
    s_po->add_option("--type", pa.type, "Coxeter type: cb1, CB<r>, A<r>, B<r>, C<r>, D<r>");
    s_po->add_option("--q", pa.q, "Use the GL3/SO3 wall parameters at q (cb1)");
    s_po->add_option("--tol", pa.tol, "Stopping tolerance")->check(CLI::Range(0.0, 1.0));
    s_po->add_option("--L", pa.L, "Fixed truncation length instead of the stopping rule")->check(CLI::NonNegativeNumber);
    s_po->add_option("--m", pa.m, "Comma-separated wall magnitudes, e.g. -1/4,-1/2");
    s_po->add_option("--eps", pa.eps, "Comma-separated wall signs (default all +1)");
    add_common(s_po, true);

    int qc_p = 0;
    std::string qc_form;
    auto* s_qc = app.add_subcommand("quadclass", "Invariants of a symmetric matrix over Q_p");
    s_qc->add_option("--p", qc_p, "Odd prime")->required();
    s_qc->add_option("--form", qc_form, "Rows separated by ';', entries by ','")->required();
    add_common(s_qc, false);

    int ap_n = 0, ap_p = 0;
    auto* s_ap = app.add_subcommand("apartments", "Apartment classes for every form class in dimension n");
    s_ap->add_option("--n", ap_n, "Dimension")->required();
    s_ap->add_option("--p", ap_p, "Odd prime")->required();
    add_common(s_ap, false);

    int dm_n = 0, dm_p = 3;
    auto* s_dm = app.add_subcommand("dimension", "Distinction dimensions for n = 1..n-max");
    s_dm->add_option("--n-max", dm_n, "Largest dimension")->required();
    s_dm->add_option("--p", dm_p, "Odd prime (default 3)");
    add_common(s_dm, true);

    GraphArgs ga;
    auto* s_gr = app.add_subcommand("graph", "Local graph and harmonic dimension");
    s_gr->add_option("--case", ga.case_tag, "Case tag (GLn-orth with --n 3 for the flag model)")->required();
    s_gr->add_option("--q", ga.q, "Field size")->required();
    s_gr->add_option("--n", ga.n, "Matrix size for GLn-orth")->check(CLI::Range(2, 3));
    s_gr->add_option("--form", ga.form, "Symmetric form over F_q for GLn-orth, rows ';', entries ','");
    s_gr->add_option("--chi", ga.chi, "Character of the fixed group")->check(CLI::IsMember({"trivial", "corner"}));
    s_gr->add_option("--x", ga.x, "Parameter x (field element index)");
    s_gr->add_option("--eps", ga.eps, "Parameter eps (field element index)");
    add_common(s_gr, true);

    int sc_n = 0, sc_p = 3;
    auto* s_sc = app.add_subcommand("sum-check", "Sum of distinction dimensions over all form classes");
    s_sc->add_option("--n-max", sc_n, "Largest dimension")->required();
    s_sc->add_option("--p", sc_p, "Odd prime (default 3)");
    add_common(s_sc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Output o;
        bool checks = common.verify;
        if (s_ro->parsed()) {
            o = run_rankone(ro, common);
        } else if (s_po->parsed()) {
            o = run_poincare(pa, common);
        } else if (s_qc->parsed()) {
            o = run_quadclass(qc_p, qc_form, common);
        } else if (s_ap->parsed()) {
            o = run_apartments(ap_n, ap_p, common);
        } else if (s_dm->parsed()) {
            o = run_dimension(dm_n, dm_p, common);
        } else if (s_gr->parsed()) {
            o = run_graph(ga, common);
        } else {
            o = run_sum_check(sc_n, sc_p, common);
            checks = true;
        }
        const std::string text = render(o, common.format);
        if (common.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(common.out);
            if (!f) {
                std::cerr << "error: cannot write " << common.out << "\n";
                return 1;
            }
            f << text;
        }
        if (checks && !o.ok) {
            std::cerr << "verification failed\n";
            return 1;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
