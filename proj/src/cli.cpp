#include "regsys/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "regsys/canonical.hpp"
#include "regsys/equivalence.hpp"
#include "regsys/io.hpp"

namespace regsys {

namespace {

constexpr const char* kVersion = "0.1.0";

SystemDocument load_document(const std::string& path, std::istream& in) {
    nlohmann::json j;
    if (path == "-") {
        j = nlohmann::json::parse(in);
    } else {
        std::ifstream f(path);
        if (!f)
            throw std::invalid_argument("cannot open file: " + path);
        j = nlohmann::json::parse(f);
    }
    return document_from_json(j);
}

nlohmann::ordered_json transform_to_json(const FeedbackTransform& t) {
    nlohmann::ordered_json j;
    j["P"] = matrix_to_json(t.p);
    j["Q"] = matrix_to_json(t.q);
    j["K"] = matrix_to_json(t.k);
    return j;
}

bool color_enabled() {
    const char* v = std::getenv("REGSYS_COLOR");
    return v != nullptr && std::string(v) == "1";
}

std::string paint(const std::string& s, bool color) {
    return color ? "\033[1;36m" + s + "\033[0m" : s;
}

// Renders a matrix with vertical/horizontal separators after the given
// cumulative offsets (chain boundaries).
void print_matrix(std::ostream& out, const Mat& m, const std::vector<int>& row_cuts,
                  const std::vector<int>& col_cuts, const std::string& indent) {
    if (m.rows() == 0 || m.cols() == 0) {
        out << indent << "(empty)\n";
        return;
    }
    int width = 1;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            width = std::max(width, static_cast<int>(std::to_string(m(i, j)).size()));

    auto is_cut = [](const std::vector<int>& cuts, int pos) {
        for (int c : cuts)
            if (c == pos)
                return true;
        return false;
    };

    for (int i = 0; i < m.rows(); ++i) {
        if (i > 0 && is_cut(row_cuts, i)) {
            out << indent << std::string(2, ' ');
            for (int j = 0; j < m.cols(); ++j) {
                out << std::string(static_cast<std::size_t>(width) + 1, '-');
                if (j + 1 < m.cols() && is_cut(col_cuts, j + 1))
                    out << "-+";
            }
            out << '\n';
        }
        out << indent << "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j > 0 && is_cut(col_cuts, j))
                out << " |";
            std::string v = std::to_string(m(i, j));
            out << ' ' << std::string(static_cast<std::size_t>(width) - v.size(), ' ') << v;
        }
        out << " ]\n";
    }
}

std::vector<int> chain_cuts(const std::vector<int>& indices) {
    std::vector<int> cuts;
    int acc = 0;
    for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
        acc += indices[k];
        cuts.push_back(acc);
    }
    return cuts;
}

void render_pretty(std::ostream& out, const SystemDocument& doc,
                   const CanonicalDecomposition& dec) {
    bool color = color_enabled();
    out << paint("canonical decomposition", color) << " over Z/" << doc.modulus
        << "  (n=" << dec.n << ", m=" << dec.m << ")";
    if (doc.has_label)
        out << "  label: " << doc.label;
    out << "\n";
    out << "components: " << dec.components.size() << "\n";
    for (const auto& c : dec.components) {
        out << "\n" << paint("component e = " + std::to_string(c.e.value()), color) << "\n";
        out << "  kronecker indices: [";
        for (std::size_t k = 0; k < c.kronecker_indices.size(); ++k) {
            if (k > 0)
                out << ", ";
            out << c.kronecker_indices[k];
        }
        out << "]\n";
        std::vector<int> cuts = chain_cuts(c.kronecker_indices);
        out << "  A_hat:\n";
        print_matrix(out, c.a_hat, cuts, cuts, "    ");
        out << "  B_hat:\n";
        print_matrix(out, c.b_hat, cuts, {}, "    ");
        out << "  C_hat:\n";
        print_matrix(out, c.c_hat, {}, {}, "    ");
    }
}

int run_canonical(const std::string& input, bool pretty, std::istream& in, std::ostream& out) {
    SystemDocument doc = load_document(input, in);
    LinSys sys = system_from_document(doc);
    CanonicalDecomposition dec = canonical_decomposition(sys);
    if (pretty) {
        render_pretty(out, doc, dec);
        return 0;
    }
    nlohmann::ordered_json rep;
    rep["tool"] = "regsys";
    rep["version"] = kVersion;
    rep["input"] = document_to_json(doc);
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& c : dec.components) {
        nlohmann::ordered_json jc;
        jc["idempotent"] = c.e.value();
        jc["kronecker_indices"] = c.kronecker_indices;
        jc["A_hat"] = matrix_to_json(c.a_hat);
        jc["B_hat"] = matrix_to_json(c.b_hat);
        jc["C_hat"] = matrix_to_json(c.c_hat);
        comps.push_back(std::move(jc));
    }
    rep["components"] = std::move(comps);
    out << rep.dump(2) << "\n";
    return 0;
}

int run_equiv(const std::string& patha, const std::string& pathb, bool witness,
              const std::string& method, std::istream& in, std::ostream& out) {
    if (patha == "-" && pathb == "-")
        throw std::invalid_argument("equiv: only one input may come from stdin");
    SystemDocument da = load_document(patha, in);
    SystemDocument db = load_document(pathb, in);
    LinSys sa = system_from_document(da);
    LinSys sb = system_from_document(db);

    nlohmann::ordered_json j;
    bool equivalent = false;
    if (method == "nk") {
        equivalent = reachable_equivalent(sa, sb);
        j["equivalent"] = equivalent;
        j["method"] = "nk_factors";
    } else {
        EquivalenceVerdict v = feedback_equivalent(sa, sb, witness);
        equivalent = v.equivalent;
        j["equivalent"] = equivalent;
        j["method"] = "canonical";
        if (witness && v.witness)
            j["witness"] = transform_to_json(*v.witness);
    }
    out << j.dump(2) << "\n";
    return equivalent ? 0 : 1;
}

int run_invariants(const std::string& input, std::istream& in, std::ostream& out) {
    SystemDocument doc = load_document(input, in);
    LinSys sys = system_from_document(doc);
    nlohmann::ordered_json j;
    j["modulus"] = doc.modulus;
    j["n"] = doc.n;
    j["m"] = doc.m;
    j["nk_invariant_factors"] = nk_invariant_factors(sys);
    if (doc.m == 1)
        j["single_input_d"] = single_input_canonical(sys).d;
    out << j.dump(2) << "\n";
    return 0;
}

int run_transform(const std::string& input, std::uint64_t seed, std::istream& in,
                  std::ostream& out) {
    SystemDocument doc = load_document(input, in);
    LinSys sys = system_from_document(doc);
    FeedbackTransform t = random_feedback(sys.ring(), doc.n, doc.m, seed);
    SystemDocument od = document_from_system(apply_feedback(sys, t));
    od.label = doc.label;
    od.has_label = doc.has_label;
    nlohmann::ordered_json j = document_to_json(od);
    j["seed"] = seed;
    j["transform"] = transform_to_json(t);
    out << j.dump(2) << "\n";
    return 0;
}

int run_smith(const std::string& input, std::istream& in, std::ostream& out) {
    SystemDocument doc = load_document(input, in);
    LinSys sys = system_from_document(doc);
    SmithForm sf = smith_form(sys.b);
    nlohmann::ordered_json j;
    j["modulus"] = doc.modulus;
    j["d"] = sf.d;
    j["D"] = matrix_to_json(sf.diag);
    j["U"] = matrix_to_json(sf.u);
    j["V"] = matrix_to_json(sf.v);
    out << j.dump(2) << "\n";
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"canonical forms and feedback equivalence of linear systems over Z/n"};
    app.set_version_flag("--version", std::string("regsys ") + kVersion);
    app.require_subcommand(1);

    std::string can_input = "-";
    bool can_pretty = false;
    CLI::App* can = app.add_subcommand("canonical", "canonical decomposition of a system");
    can->add_option("input", can_input, "system document path, or - for stdin");
    can->add_flag("--pretty", can_pretty, "human-readable rendering");

    std::string eq_a, eq_b;
    bool eq_witness = false;
    std::string eq_method = "canonical";
    CLI::App* eq = app.add_subcommand("equiv", "decide feedback equivalence of two systems");
    eq->add_option("A", eq_a, "first system document")->required();
    eq->add_option("B", eq_b, "second system document")->required();
    eq->add_flag("--witness", eq_witness, "emit an explicit transform when equivalent");
    eq->add_option("--method", eq_method, "decision procedure")
        ->check(CLI::IsMember({"canonical", "nk"}));

    std::string inv_input = "-";
    CLI::App* inv = app.add_subcommand("invariants", "reachability invariant factor chains");
    inv->add_option("input", inv_input, "system document path, or - for stdin");

    std::string tr_input = "-";
    std::uint64_t tr_seed = 0;
    CLI::App* tr = app.add_subcommand("transform", "apply a seeded random feedback transform");
    tr->add_option("input", tr_input, "system document path, or - for stdin");
    tr->add_option("--seed", tr_seed, "RNG seed")->required();

    std::string sm_input = "-";
    CLI::App* sm = app.add_subcommand("smith", "idempotent Smith form of B (debug)");
    sm->add_option("input", sm_input, "system document path, or - for stdin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(can))
            return run_canonical(can_input, can_pretty, in, out);
        if (app.got_subcommand(eq))
            return run_equiv(eq_a, eq_b, eq_witness, eq_method, in, out);
        if (app.got_subcommand(inv))
            return run_invariants(inv_input, in, out);
        if (app.got_subcommand(tr))
            return run_transform(tr_input, tr_seed, in, out);
        if (app.got_subcommand(sm))
            return run_smith(sm_input, in, out);
    } catch (const NotSquarefreeError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace regsys
