// symp: batch frontend. exit 0 ok, 1 a requested check failed, 2 usage / bad input
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "symp/boundedgen.hpp"
#include "symp/liecheck.hpp"
#include "symp/parabolic.hpp"
#include "symp/reduction.hpp"
#include "symp/relations.hpp"
#include "symp/shortcuts.hpp"
#include "symp/words.hpp"

using namespace symp;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

// text "p=.." format, or a JSON array of arrays
SpMatrix read_matrix(const std::string& path) {
    std::string t = slurp(path);
    auto first = t.find_first_not_of(" \t\r\n");
    IntMatrix m = (first != std::string::npos && t[first] == '[') ? parse_matrix_json(t) : parse_matrix(t);
    return SpMatrix::from_matrix(m);
}

mpq_class rat(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw UsageError("bad rational: " + s);
    q.canonicalize();
    return q;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<HalfRoot> halves(const std::string& s) {
    if (s.empty()) return {};
    auto v = parse_half_root_list(s);
    std::sort(v.begin(), v.end());
    return v;
}

json rows_json(const std::vector<IntVec>& rows) {
    json j = json::array();
    for (auto& r : rows) {
        json row = json::array();
        for (auto& x : r) row.push_back(x.get_str());
        j.push_back(row);
    }
    return j;
}

int finish(bool ok, const json& report) {
    std::cout << report.dump() << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Sp(2p,Z) toolkit"};
    app.require_subcommand(1);

    int p = 2;
    std::string root_text, x_text = "1", file, S_text, T_text, out, svg, word_text, format = "text";
    std::string a_text, n_text, r_text = "1", eps_text = "1/4", C_text, hkind = "cones";
    int xbound = 3, count = 100, smin = 3, smax = 5, tmin = 1, tmax = 3;
    long box = 2, N = 16;
    unsigned seed = 1;
    size_t max_len = 20, max_cost = 100000;
    bool literal = false, use_short = true;
    int prop_count = 100;

    auto* gen = app.add_subcommand("gen", "print e_root(x)");
    gen->add_option("--p", p)->required()->check(CLI::Range(1, 64));
    gen->add_option("--root", root_text)->required();
    gen->add_option("--x", x_text);
    gen->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* rel = app.add_subcommand("verify-relations", "relation table and u / u_Z identity suite");
    rel->add_option("--p", p)->required()->check(CLI::Range(1, 8));
    rel->add_option("--xbound", xbound)->check(CLI::Range(1, 100));
    rel->add_flag("--literal", literal, "commutators must be exactly e_{a+b}(kappa x y)");
    rel->add_option("--count", prop_count, "random inputs per frame")->check(CLI::NonNegativeNumber);
    rel->add_option("--seed", seed);

    auto* sc = app.add_subcommand("shortcut", "shortcut word for e_root(x)");
    sc->add_option("--p", p)->required()->check(CLI::Range(1, 64));
    sc->add_option("--root", root_text)->required();
    sc->add_option("--x", x_text)->required();

    auto* dec = app.add_subcommand("decompose", "bounded generation of a block matrix");
    dec->add_option("--file", file)->required();
    dec->add_option("--T", T_text)->required();
    dec->add_option("--word-out", out, "write the compressed word here");
    dec->add_option("--csv-out", svg, "write length statistics here");
    dec->add_flag("!--no-short", use_short, "skip the shortcut word");

    auto* om = app.add_subcommand("omega", "d e n normal form of a parabolic element");
    om->add_option("--file", file)->required();
    om->add_option("--S", S_text)->required();
    om->add_option("--T", T_text);
    om->add_option("--word-out", out);

    auto* vl = app.add_subcommand("vlattice", "lattice spanned by short vectors of a Siegel point");
    vl->add_option("--a", a_text, "a_1,..,a_p")->required();
    vl->add_option("--n", n_text, "root=q;root=q, positive roots");
    vl->add_option("--r", r_text);
    vl->add_option("--box", box)->check(CLI::Range(1L, 1000L));

    auto* rs = app.add_subcommand("rshort-sweep", "random in-regime Siegel points, CSV");
    rs->add_option("--p", p)->required()->check(CLI::Range(1, 4));
    rs->add_option("--eps", eps_text);
    rs->add_option("--C", C_text, "default: calibrated");
    rs->add_option("--count", count)->check(CLI::PositiveNumber);
    rs->add_option("--seed", seed);
    rs->add_option("--box", box)->check(CLI::Range(1L, 50L));

    auto* tr = app.add_subcommand("triangulate", "adaptive triangulation of [0,N]^2");
    tr->add_option("--N", N)->check(CLI::Range(1L, 4096L));
    tr->add_option("--height", hkind)->check(CLI::IsMember({"cones", "bottom", "const"}));
    tr->add_option("--seed", seed);
    tr->add_option("--out", out, "triangulation JSON");
    tr->add_option("--svg", svg);

    auto* dct = app.add_subcommand("dct-check", "weight-zero H2 / Kill over the frame grid, CSV");
    dct->add_option("--smin", smin)->check(CLI::Range(1, 8));
    dct->add_option("--smax", smax)->check(CLI::Range(1, 8));
    dct->add_option("--tmin", tmin)->check(CLI::Range(0, 6));
    dct->add_option("--tmax", tmax)->check(CLI::Range(0, 6));

    auto* ar = app.add_subcommand("area", "bounded search for the area of a relation");
    ar->add_option("--p", p)->required()->check(CLI::Range(1, 4));
    ar->add_option("--word", word_text)->required();
    ar->add_option("--xbound", xbound)->check(CLI::Range(1, 10));
    ar->add_option("--max-len", max_len);
    ar->add_option("--max-cost", max_cost);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) {
            SpMatrix M = elementary(parse_root(root_text, p), mpz_class(x_text), p);
            if (format == "json") std::cout << format_matrix_json(M.matrix()) << "\n";
            else std::cout << format_matrix(M.matrix());
            return 0;
        }
        if (*rel) {
            auto r = verify_relations(p, xbound, literal);
            json j;
            j["p"] = p;
            j["xbound"] = xbound;
            j["literal"] = literal;
            j["seed"] = seed;
            j["relations"] = json::parse(relation_report_json(r));
            bool ok = r.ok();
            json frames = json::array();
            for (int nS = 1; nS <= p; ++nS) {
                auto f = standard_frame(nS, p - nS);
                auto q = verify_prop31(f, prop_count, seed);
                json fj = json::parse(relation_report_json(q));
                fj["nS"] = nS;
                frames.push_back(fj);
                ok = ok && q.ok();
            }
            j["prop31"] = frames;
            return finish(ok, j);
        }
        if (*sc) {
            Root a = parse_root(root_text, p);
            mpz_class x(x_text);
            auto plan = shortcut(a, x, p);
            json j = json::parse(plan_to_json(plan));
            bool ok = evaluate(plan.ladder) == elementary(a, x, p);
            j["length"] = plan.ladder.size();
            j["log2"] = std::log2(std::abs(x.get_d()) + 2);
            j["reconstructs"] = ok;
            return finish(ok, j);
        }
        if (*dec) {
            SpMatrix M = read_matrix(file);
            SubgroupFrame f(M.rank(), {}, halves(T_text));
            Decomposition d;
            Word w(M.rank());
            if (use_short) std::tie(d, w) = sp_decompose_short(M, f);
            else d = sp_decompose(M, f);
            bool ok = factors_product(d.factors, M.rank()) == M;
            if (use_short) ok = ok && evaluate(w) == M;
            json j = json::parse(decomposition_to_json(d));
            j["reconstructs"] = ok;
            if (use_short) j["word_length"] = w.size();
            if (!out.empty()) spit(out, w.str() + "\n");
            if (!svg.empty()) {
                std::ostringstream csv;
                csv << "p,norm_inf,factors,elementary_count,word_length\n"
                    << M.rank() << "," << M.norm_inf().get_str() << "," << d.factors.size() << ","
                    << d.elementary_count << "," << w.size() << "\n";
                spit(svg, csv.str());
            }
            return finish(ok, j);
        }
        if (*om) {
            SpMatrix M = read_matrix(file);
            SubgroupFrame f(M.rank(), halves(S_text), halves(T_text));
            auto r = omega_normal_form(M, f);
            bool ok = evaluate(r.word) == M && reassemble(r.split) == M;
            json j = json::parse(omega_report_json(r));
            j["reconstructs"] = ok;
            if (!out.empty()) spit(out, r.word.str() + "\n");
            return finish(ok, j);
        }
        if (*vl) {
            SiegelPoint pt;
            for (auto& s : split(a_text, ',')) pt.a.push_back(rat(s));
            pt.p = static_cast<int>(pt.a.size());
            for (auto& kv : split(n_text, ';')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw UsageError("--n wants root=q");
                pt.n_coords[parse_root(kv.substr(0, eq), pt.p)] = rat(kv.substr(eq + 1));
            }
            mpq_class r = rat(r_text);
            auto b = v_lattice(siegel_matrix(pt), r, box);
            bool ok = verify_lattice(b, siegel_matrix(pt), r, box);
            json j;
            j["basis"] = rows_json(b.rows);
            j["qualifying"] = b.qualifying;
            j["box"] = box;
            j["verified"] = ok;
            return finish(ok, j);
        }
        if (*rs) {
            mpq_class eps = rat(eps_text);
            mpq_class C = C_text.empty() ? calibrate_C(p, eps, 20, seed, box) : rat(C_text);
            auto s = rshort_sweep(p, eps, C, count, seed, box);
            std::cout << "p,eps,C,count,seed,box,confirmed,refuted,outside,bad_basis\n"
                      << p << "," << eps.get_str() << "," << C.get_str() << "," << count << "," << seed << ","
                      << box << "," << s.confirmed << "," << s.refuted << "," << s.outside << "," << s.bad_basis
                      << "\n";
            return s.refuted == 0 && s.bad_basis == 0 ? 0 : 1;
        }
        if (*tr) {
            GridFn h = hkind == "cones"    ? cone_field(N, seed)
                       : hkind == "bottom" ? GridFn([](long, long y) { return mpq_class(std::max(1L, y)); })
                                           : GridFn([](long, long) { return mpq_class(1); });
            auto t = adaptive_triangulate(N, h);
            auto rep = check_triangulation(t, h);
            if (!out.empty()) spit(out, triangulation_to_json(t));
            if (!svg.empty()) spit(svg, triangulation_to_svg(t));
            json j;
            j["N"] = N;
            j["h"] = hkind;
            j["seed"] = seed;
            j["triangles"] = rep.triangle_count;
            j["energy"] = rep.energy;
            j["K"] = rep.K;
            j["tiles"] = rep.tiles;
            j["edge_violations"] = rep.bullet1_violations;
            return finish(rep.tiles && rep.bullet1_violations == 0, j);
        }
        if (*dct) {
            bool ok = true;
            std::cout << dct_csv_header() << "\n";
            for (int s = smin; s <= smax; ++s)
                for (int t = tmin; t <= tmax; ++t) {
                    auto r = dct_report(standard_frame(s, t));
                    std::cout << dct_csv_row(r) << "\n";
                    ok = ok && r.verdict;
                }
            return ok ? 0 : 1;
        }
        if (*ar) {
            Word w = parse_word(word_text, p);
            auto res = area_search(w, relator_set(p, xbound), max_len, max_cost);
            json j;
            j["word"] = w.str();
            j["area"] = res.area ? json(*res.area) : json(nullptr);
            j["states"] = res.states;
            j["max_len"] = max_len;
            j["max_cost"] = max_cost;
            return finish(res.area.has_value(), j);
        }
    } catch (const UsageError& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const UnsupportedRank& e) {
        std::cerr << json{{"error", "rank"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
    return 2;
}
