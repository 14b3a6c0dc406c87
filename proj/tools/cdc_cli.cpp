// Command-line front end: every subcommand reads and writes single JSON
// documents (or DOT text) so that invocations compose through pipes.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cdc/classes.hpp"
#include "cdc/fixtures.hpp"
#include "cdc/json_io.hpp"

using namespace cdc;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) fail(errc::bad_params, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Document load(const std::string& path) { return parse_document(read_input(path)); }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int check_property(const std::string& property, const Document& doc) {
    const Complex& p = doc.complex;
    Bits storage = p.empty_set();
    const Bits& u = doc.subset_or_all(storage);
    Json out;
    out["property"] = property;
    bool holds = false;

    if (property == "thin") {
        auto w = thinness_violation(p);
        holds = !w.has_value();
        if (w) {
            out["witness"] = {{"lower", w->lower == BOTTOM ? Json(nullptr) : Json(p.name(w->lower))},
                              {"upper", p.name(w->upper)},
                              {"reason", w->reason}};
        }
    } else if (property == "constructible" || property == "atom") {
        Context ctx(p);
        holds = property == "atom" ? ctx.is_constructible_atom(u) : ctx.certify(u);
        if (!holds) {
            auto why = ctx.why_not(u);
            out["witness"] = why ? Json(*why) : Json("subset has no greatest element");
        } else if (property == "constructible") {
            out["merger_tree"] = to_json(p, ctx.merger_tree(u));
        }
    } else if (property == "cdc") {
        Context ctx(p);
        int witness = -1;
        std::string reason;
        holds = ctx.is_constructible_directed_complex(&witness, &reason);
        if (!holds) {
            out["witness"] = witness >= 0 ? Json(p.name(witness)) : Json(nullptr);
            out["reason"] = reason;
        }
    } else if (property == "molecule") {
        OmegaContext ctx(p);
        holds = ctx.certify_molecule(u);
        if (holds) out["composition_tree"] = to_json(p, ctx.composition_tree(u));
        else {
            auto why = ctx.why_not(u);
            if (why) out["witness"] = *why;
        }
    } else if (property == "directedcomplex") {
        OmegaContext ctx(p);
        int witness = -1;
        std::string reason;
        holds = ctx.is_directed_complex(&witness, &reason);
        if (!holds) {
            out["witness"] = p.name(witness);
            out["reason"] = reason;
        }
    } else if (property == "pope") {
        Context ctx(p);
        holds = is_positive_opetope(ctx, u);
    } else if (property == "simple") {
        Context ctx(p);
        holds = is_simple(ctx, u);
    } else if (property == "flowconnected") {
        Context ctx(p);
        if (!ctx.certify(u)) fail(errc::precondition_failed, "subset is not a constructible molecule");
        holds = is_flow_connected(p, u);
    } else if (property == "loopfree" || property == "totallyloopfree") {
        std::vector<int> cycle;
        holds = property == "loopfree" ? is_loop_free(p, &cycle) : is_totally_loop_free(p, &cycle);
        if (!holds) {
            std::vector<std::string> ids;
            for (int x : cycle) ids.push_back(p.name(x));
            out["witness"] = ids;
        }
    } else if (property == "recdividable") {
        holds = is_recursively_dividable(p, u);
    } else if (property == "cwposet") {
        int witness = -1;
        holds = cw_poset_check(p, &witness);
        if (!holds) out["witness"] = p.name(witness);
    } else if (property == "freegen") {
        FreeGenerationCertificate cert = free_generation_certificate(p);
        holds = cert.conclusive();
        out["verdict"] = cert.verdict_name();
        out["explanation"] = cert.explanation;
        if (!cert.evidence.empty()) out["evidence"] = cert.evidence;
        out["molecule_budget"] = cert.molecule_budget;
        if (cert.molecules_examined) out["molecules_examined"] = cert.molecules_examined;
    } else {
        fail(errc::bad_params, "unknown property '" + property + "'");
    }
    out["holds"] = holds;
    emit(out);
    return holds ? 0 : 1;
}

Json partial_map_json(const Complex& src, const Complex& tgt, const PartialMap& m) {
    Json j = Json::object();
    for (int i = 0; i < src.size(); ++i) {
        int img = m.apply(i);
        j[src.name(i)] = img >= 0 ? Json(tgt.name(img)) : Json(nullptr);
    }
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructible directed complex toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "emit a generator complex");
    std::string kind;
    std::vector<int> params;
    gen->add_option("kind", kind, "point|globe|path|atom2|cube|simplex")->required();
    gen->add_option("params", params, "integer parameters");

    auto add_input = [](CLI::App* cmd, std::string& target) {
        cmd->add_option("input", target, "input document ('-' for stdin)")->required();
    };

    auto* validate_cmd = app.add_subcommand("validate", "validate and normalise a document");
    std::string validate_in;
    add_input(validate_cmd, validate_in);

    auto* check_cmd = app.add_subcommand("check", "decide a property");
    std::string check_prop, check_in;
    check_cmd->add_option("--property", check_prop, "property name")->required();
    add_input(check_cmd, check_in);

    auto* boundary_cmd = app.add_subcommand("boundary", "extract a k-boundary as a complex");
    std::string b_sign = "both", b_in;
    int b_k = -2;
    boundary_cmd->add_option("--sign", b_sign, "-|+|both");
    boundary_cmd->add_option("--k", b_k, "boundary dimension (default: dim-1)");
    add_input(boundary_cmd, b_in);

    auto* merge_cmd = app.add_subcommand("merge", "reduce by simple mergers");
    bool m_atom = false, m_standard = false;
    std::string m_in;
    merge_cmd->add_flag("--to-atom", m_atom, "merge to an atom");
    merge_cmd->add_flag("--standard", m_standard, "merge all the way to the globe");
    add_input(merge_cmd, m_in);

    auto* subst_cmd = app.add_subcommand("substitute", "replace a submolecule");
    std::string s_host, s_v, s_w;
    subst_cmd->add_option("host", s_host, "host molecule document")->required();
    subst_cmd->add_option("v", s_v, "JSON array of element ids naming V")->required();
    subst_cmd->add_option("w", s_w, "replacement molecule document")->required();

    auto* cell_cmd = app.add_subcommand("cell", "atom with prescribed input and output");
    std::string c_u, c_v;
    cell_cmd->add_option("u", c_u, "input molecule document")->required();
    cell_cmd->add_option("v", c_v, "output molecule document")->required();

    auto* product_cmd = app.add_subcommand("product", "lax Gray product");
    std::string p_a, p_b;
    product_cmd->add_option("a", p_a)->required();
    product_cmd->add_option("b", p_b)->required();

    auto* join_cmd = app.add_subcommand("join", "join of two complexes");
    std::string j_a, j_b;
    join_cmd->add_option("a", j_a)->required();
    join_cmd->add_option("b", j_b)->required();

    auto* suspend_cmd = app.add_subcommand("suspend", "suspension");
    std::string su_in;
    add_input(suspend_cmd, su_in);

    auto* dual_cmd = app.add_subcommand("dual", "J-dual");
    std::string d_j = "all", d_in;
    dual_cmd->add_option("--J", d_j, "odd|even|all|comma-separated dimensions");
    add_input(dual_cmd, d_in);

    auto* adc_cmd = app.add_subcommand("adc", "augmented directed complex");
    std::string a_in;
    add_input(adc_cmd, a_in);

    auto* nerve_cmd = app.add_subcommand("nerve", "order complex of the underlying poset");
    std::string n_in;
    add_input(nerve_cmd, n_in);

    auto* hom_cmd = app.add_subcommand("homology", "reduced integer homology of the nerve");
    std::string h_in;
    add_input(hom_cmd, h_in);

    auto* mol_cmd = app.add_subcommand("molecules", "molecule enumeration");
    bool mol_enum = false;
    std::size_t mol_budget = 100000;
    std::string mol_in;
    mol_cmd->add_flag("--enumerate", mol_enum, "enumerate all molecules");
    mol_cmd->add_option("--budget", mol_budget, "composite budget");
    add_input(mol_cmd, mol_in);

    auto* dot_cmd = app.add_subcommand("dot", "DOT export of the labelled Hasse diagram");
    std::string dot_in;
    add_input(dot_cmd, dot_in);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            auto need = [&](std::size_t n) {
                if (params.size() != n)
                    fail(errc::bad_params, "generator '" + kind + "' expects " +
                                               std::to_string(n) + " parameter(s)");
            };
            Complex c;
            if (kind == "point") { need(0); c = point(); }
            else if (kind == "globe") { need(1); c = globe(params[0]); }
            else if (kind == "path") { need(1); c = path(params[0]); }
            else if (kind == "atom2") { need(2); c = atom2(params[0], params[1]); }
            else if (kind == "cube") { need(1); c = cube(params[0]); }
            else if (kind == "simplex") { need(1); c = simplex(params[0]); }
            else fail(errc::bad_params, "unknown generator kind '" + kind + "'");
            emit(to_json(c));
            return 0;
        }
        if (validate_cmd->parsed()) {
            Document doc = load(validate_in);
            emit(to_json(doc.complex, doc.subset));
            return 0;
        }
        if (check_cmd->parsed()) return check_property(check_prop, load(check_in));
        if (boundary_cmd->parsed()) {
            Document doc = load(b_in);
            Bits storage = doc.complex.empty_set();
            const Bits& u = doc.subset_or_all(storage);
            int k = b_k == -2 ? dim_of(doc.complex, u) - 1 : b_k;
            Bits b = b_sign == "both" ? boundary_both(doc.complex, u, k)
                     : b_sign == "+" ? boundary(doc.complex, u, Sign::plus, k)
                     : b_sign == "-" ? boundary(doc.complex, u, Sign::minus, k)
                                     : throw error(errc::bad_params, "sign must be -, + or both");
            emit(to_json(restrict_to(doc.complex, b).complex));
            return 0;
        }
        if (merge_cmd->parsed()) {
            if (m_atom == m_standard)
                fail(errc::bad_params, "choose exactly one of --to-atom and --standard");
            Document doc = load(m_in);
            Json out;
            if (m_atom) {
                MergeToAtomResult r = merge_to_atom(doc.complex);
                out["result"] = to_json(r.result);
                out["steps"] = to_json(r.sequence);
                out["composite"] = partial_map_json(doc.complex, r.result, r.sequence.composite);
            } else {
                StandardMergerResult r = standard_merger(doc.complex);
                out["result"] = to_json(r.result);
                out["steps"] = to_json(r.sequence);
                out["composite"] = partial_map_json(doc.complex, r.result, r.sequence.composite);
            }
            emit(out);
            return 0;
        }
        if (subst_cmd->parsed()) {
            Document host = load(s_host);
            Json vids = Json::parse(read_input(s_v));
            Bits v = host.complex.empty_set();
            for (const auto& id : vids)
                v.set(static_cast<std::size_t>(host.complex.require(id.get<std::string>())));
            Document w = load(s_w);
            SubstitutionResult r = substitute(host.complex, v, w.complex);
            emit(to_json(r.result, r.image_of_w));
            return 0;
        }
        if (cell_cmd->parsed()) {
            emit(to_json(cell(load(c_u).complex, load(c_v).complex)));
            return 0;
        }
        if (product_cmd->parsed()) {
            emit(to_json(gray_product(load(p_a).complex, load(p_b).complex).complex));
            return 0;
        }
        if (join_cmd->parsed()) {
            emit(to_json(join(load(j_a).complex, load(j_b).complex).complex));
            return 0;
        }
        if (suspend_cmd->parsed()) {
            emit(to_json(suspension(load(su_in).complex).complex));
            return 0;
        }
        if (dual_cmd->parsed()) {
            DualitySet j;
            if (d_j == "all") j = DualitySet::all();
            else if (d_j == "odd") j = DualitySet::odd();
            else if (d_j == "even") j = DualitySet::even();
            else {
                std::set<int> dims;
                std::stringstream ss(d_j);
                std::string tok;
                while (std::getline(ss, tok, ',')) dims.insert(std::stoi(tok));
                j = DualitySet::of(dims);
            }
            emit(to_json(j_dual(load(d_in).complex, j)));
            return 0;
        }
        if (adc_cmd->parsed()) {
            emit(to_json(adc_of(load(a_in).complex)));
            return 0;
        }
        if (nerve_cmd->parsed()) {
            Document doc = load(n_in);
            Bits storage = doc.complex.empty_set();
            emit(to_json(doc.complex, nerve(doc.complex, doc.subset_or_all(storage))));
            return 0;
        }
        if (hom_cmd->parsed()) {
            Document doc = load(h_in);
            Bits storage = doc.complex.empty_set();
            emit(to_json(homology(nerve(doc.complex, doc.subset_or_all(storage)))));
            return 0;
        }
        if (mol_cmd->parsed()) {
            if (!mol_enum) fail(errc::bad_params, "molecules requires --enumerate");
            Document doc = load(mol_in);
            OmegaContext ctx(doc.complex);
            EnumerationResult r = enumerate_molecules(doc.complex, mol_budget, &ctx);
            Json out;
            out["count"] = r.molecules.size();
            out["complete"] = r.complete;
            Json list = Json::array();
            for (const Bits& m : r.molecules) list.push_back(subset_ids(doc.complex, m));
            out["molecules"] = list;
            emit(out);
            return r.complete ? 0 : 3;
        }
        if (dot_cmd->parsed()) {
            std::cout << to_dot(load(dot_in).complex);
            return 0;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == errc::budget_exceeded ? 3 : 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
