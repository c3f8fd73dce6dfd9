// cubeknot: validate, transform and search cubical knot diagrams from the
// command line. All commands read cell-list files (or stdin with "-") and
// write text to stdout unless -o is given; --json switches to a stable
// machine-readable output.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cubeknot/fixtures.hpp"
#include "cubeknot/io.hpp"
#include "cubeknot/search.hpp"
#include "cubeknot/slicer.hpp"

using nlohmann::json;
using namespace cubeknot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

json cells_json(const CellComplex& complex) {
    json arr = json::array();
    for (const Cell& c : complex.cells()) arr.push_back(to_text(c, complex.context().ambient_dim));
    return json{{"dim", complex.dim()},
                {"ambient", complex.context().ambient_dim},
                {"scale", complex.context().scale},
                {"count", complex.cells().size()},
                {"cells", arr}};
}

json report_json(const KnotReport& rep) {
    return json{{"dims_ok", rep.dims_ok},   {"closed", rep.closed},
                {"regular", rep.regular},   {"connected", rep.connected},
                {"orientable", rep.orientable}, {"euler", rep.euler},
                {"valid", rep.valid}};
}

json steps_json(const MoveSequence& seq) {
    const int n = seq.initial.context().ambient_dim;
    json steps = json::array();
    for (const auto& step : seq.steps) {
        if (const auto* m1 = std::get_if<SubdivisionStep>(&step)) {
            steps.push_back(json{{"type", "m1"}, {"factor", m1->factor}});
        } else {
            const auto& mv = std::get<FaceBoundaryMove>(step);
            json removed = json::array(), inserted = json::array();
            for (const Cell& c : mv.removed) removed.push_back(to_text(c, n));
            for (const Cell& c : mv.inserted) inserted.push_back(to_text(c, n));
            steps.push_back(json{{"type", "m2"},
                                 {"carrier", to_text(mv.carrier, n)},
                                 {"removed", removed},
                                 {"inserted", inserted}});
        }
    }
    return steps;
}

void emit(bool as_json, const json& payload, const std::string& plain) {
    if (as_json)
        std::cout << payload.dump(2) << '\n';
    else
        std::cout << plain;
}

KnotDiagram load_diagram(const std::string& path) {
    return KnotDiagram(parse_cells(read_input(path)));
}

SlicedComplex load_sliced(const std::string& path) {
    return SlicedComplex(parse_cells(read_input(path)));
}

int cmd_validate(const std::string& file, bool as_json) {
    const auto d = load_diagram(file);
    std::ostringstream os;
    os << d.report().summary() << '\n';
    emit(as_json,
         json{{"command", "validate"},
              {"valid", d.valid()},
              {"report", report_json(d.report())},
              {"summary", d.report().summary()}},
         os.str());
    return d.valid() ? kExitOk : kExitInvalid;
}

int cmd_info(const std::string& file, bool as_json) {
    const auto d = load_diagram(file);
    const auto& idx = d.index();
    json offending = json::array();
    std::string tubular = "n/a";
    if (d.valid()) {
        const auto tube = is_tubular(d);
        tubular = tube.tubular ? "yes" : "no";
        for (const Cell& q : tube.offending)
            offending.push_back(to_text(q, d.context().ambient_dim));
    }
    std::ostringstream os;
    os << "cells: " << d.cells().size() << " (dim " << d.dim() << ", ambient "
       << d.context().ambient_dim << ", scale " << d.context().scale << ")\n"
       << "vertices: " << idx.cells_of_dim(0) << "  edges: " << idx.cells_of_dim(1)
       << "  faces: " << idx.cells_of_dim(2) << '\n'
       << "euler: " << d.report().euler << '\n'
       << d.report().summary() << '\n'
       << "tubular: " << tubular << '\n';
    emit(as_json,
         json{{"command", "info"},
              {"complex", cells_json(d.complex())},
              {"vertices", idx.cells_of_dim(0)},
              {"edges", idx.cells_of_dim(1)},
              {"faces", idx.cells_of_dim(2)},
              {"euler", d.report().euler},
              {"report", report_json(d.report())},
              {"tubular", tubular},
              {"offending", offending}},
         os.str());
    return d.valid() ? kExitOk : kExitInvalid;
}

int cmd_moves(const std::string& file, bool as_json) {
    const auto d = load_diagram(file);
    if (!d.valid()) {
        std::cerr << "input is not a valid knot: " << d.report().summary() << '\n';
        return kExitInvalid;
    }
    const auto moves = enumerate_face_moves(d);
    const int n = d.context().ambient_dim;
    if (as_json) {
        json arr = json::array();
        for (std::size_t i = 0; i < moves.size(); ++i) {
            json removed = json::array(), inserted = json::array();
            for (const Cell& c : moves[i].removed) removed.push_back(to_text(c, n));
            for (const Cell& c : moves[i].inserted) inserted.push_back(to_text(c, n));
            arr.push_back(json{{"index", i},
                               {"carrier", to_text(moves[i].carrier, n)},
                               {"removed", removed},
                               {"inserted", inserted}});
        }
        std::cout << json{{"command", "moves"}, {"count", moves.size()}, {"moves", arr}}.dump(2)
                  << '\n';
    } else {
        for (std::size_t i = 0; i < moves.size(); ++i) {
            std::cout << i << ": carrier " << to_text(moves[i].carrier, n) << " exchanges "
                      << moves[i].removed.size() << " for " << moves[i].inserted.size() << '\n';
        }
    }
    return kExitOk;
}

int cmd_apply(const std::string& file, std::size_t index, const std::string& out, bool as_json) {
    const auto d = load_diagram(file);
    if (!d.valid()) {
        std::cerr << "input is not a valid knot: " << d.report().summary() << '\n';
        return kExitInvalid;
    }
    const auto moves = enumerate_face_moves(d);
    if (index >= moves.size()) {
        std::cerr << "move index " << index << " out of range (have " << moves.size() << ")\n";
        return kExitUsage;
    }
    const auto next = apply_move(d, moves[index]);
    if (as_json)
        std::cout << json{{"command", "apply"},
                          {"move", index},
                          {"digest", diagram_digest(next)},
                          {"complex", cells_json(next.complex())}}
                         .dump(2)
                  << '\n';
    else
        write_output(out, to_text(next.complex()));
    return kExitOk;
}

int cmd_subdivide(const std::string& file, int m, const std::string& out, bool as_json) {
    const auto d = load_diagram(file);
    if (!d.valid()) {
        std::cerr << "input is not a valid knot: " << d.report().summary() << '\n';
        return kExitInvalid;
    }
    const auto fine = subdivide_knot(d, m);
    if (as_json)
        std::cout << json{{"command", "subdivide"},
                          {"factor", m},
                          {"digest", diagram_digest(fine)},
                          {"complex", cells_json(fine.complex())}}
                         .dump(2)
                  << '\n';
    else
        write_output(out, to_text(fine.complex()));
    return kExitOk;
}

int cmd_slice(const std::string& file, double level, const std::string& out, bool as_json) {
    const auto J = load_sliced(file);
    const auto d = slice_at(J, level);
    if (as_json)
        std::cout << json{{"command", "slice"},
                          {"level", level},
                          {"digest", diagram_digest(d)},
                          {"complex", cells_json(d.complex())}}
                         .dump(2)
                  << '\n';
    else
        write_output(out, to_text(d.complex()));
    return kExitOk;
}

int carry_exit(const CarryResult& res, const std::string& out, bool as_json,
               const char* command) {
    json payload{{"command", command}};
    std::string plain;
    int code = kExitOk;
    switch (res.status) {
        case CarryStatus::Ok: {
            payload["status"] = "ok";
            payload["steps"] = res.certificate->steps.size();
            payload["digest"] = res.certificate->final_digest;
            payload["certificate"] = to_text(*res.certificate);
            plain = to_text(*res.certificate);
            break;
        }
        case CarryStatus::Stuck:
            payload["status"] = "stuck";
            payload["level"] = res.level;
            payload["solid_index"] = res.solid_index;
            payload["message"] = res.message;
            plain = "stuck at level " + std::to_string(res.level) + ": " + res.message + "\n";
            code = kExitInconclusive;
            break;
        case CarryStatus::StructureError:
            payload["status"] = "structure-error";
            payload["level"] = res.level;
            payload["message"] = res.message;
            plain = "structure error: " + res.message + "\n";
            code = kExitInvalid;
            break;
    }
    if (as_json)
        std::cout << payload.dump(2) << '\n';
    else if (code == kExitOk)
        write_output(out, plain);
    else
        std::cerr << plain;
    return code;
}

int cmd_sweep(const std::string& file, int level, const std::string& out, bool as_json) {
    const auto J = load_sliced(file);
    return carry_exit(carry_level(J, level), out, as_json, "sweep");
}

int cmd_carry(const std::string& file, const std::string& out, bool as_json) {
    const auto J = load_sliced(file);
    return carry_exit(carry_full(J), out, as_json, "carry");
}

int cmd_search(const std::string& file_a, const std::string& file_b, int max_moves,
               std::size_t max_states, bool normalize, int max_subdivision,
               const std::string& out, bool as_json) {
    const auto source = load_diagram(file_a);
    const auto target = load_diagram(file_b);
    if (!source.valid() || !target.valid()) {
        std::cerr << "both inputs must be valid knots\n";
        return kExitInvalid;
    }

    SearchStats last_stats;
    for (int m = 1; m <= max_subdivision; ++m) {
        const KnotDiagram s = m == 1 ? source : subdivide_knot(source, m);
        const KnotDiagram t = m == 1 ? target : subdivide_knot(target, m);
        auto res = bfs_search(s, t, max_moves, max_states, normalize);
        last_stats = res.stats;
        if (!res.certificate) continue;

        MoveSequence seq = std::move(*res.certificate);
        if (m > 1) {
            // Present the certificate from the original diagram.
            std::vector<MoveStep> steps;
            steps.reserve(seq.steps.size() + 1);
            steps.emplace_back(SubdivisionStep{m});
            steps.insert(steps.end(), seq.steps.begin(), seq.steps.end());
            seq.initial = source;
            seq.steps = std::move(steps);
        }
        if (as_json) {
            std::cout << json{{"command", "search"},
                              {"found", true},
                              {"scale", m},
                              {"length", seq.steps.size()},
                              {"digest", seq.final_digest},
                              {"steps", steps_json(seq)},
                              {"certificate", to_text(seq)},
                              {"stats",
                               json{{"states", res.stats.states_stored},
                                    {"expanded", res.stats.states_expanded}}}}
                             .dump(2)
                      << '\n';
        } else {
            write_output(out, to_text(seq));
        }
        return kExitOk;
    }

    if (as_json)
        std::cout << json{{"command", "search"},
                          {"found", false},
                          {"stats",
                           json{{"states", last_stats.states_stored},
                                {"expanded", last_stats.states_expanded},
                                {"state_budget_exhausted", last_stats.state_budget_exhausted},
                                {"move_budget_exhausted", last_stats.move_budget_exhausted}}}}
                         .dump(2)
                  << '\n';
    else
        std::cerr << "no certificate within the budgets (inconclusive)\n";
    return kExitInconclusive;
}

int cmd_replay(const std::string& file, bool as_json) {
    const MoveSequence seq = parse_certificate(read_input(file));
    const auto res = replay(seq);
    std::ostringstream os;
    if (res.ok)
        os << "replay ok: " << seq.steps.size() << " steps, digest " << seq.final_digest << '\n';
    else
        os << "replay FAILED at step " << res.failed_step << ": " << res.message << '\n';
    emit(as_json,
         json{{"command", "replay"},
              {"ok", res.ok},
              {"steps", seq.steps.size()},
              {"failed_step", res.ok ? json(nullptr) : json(res.failed_step)},
              {"message", res.message}},
         os.str());
    return res.ok ? kExitOk : kExitInvalid;
}

int cmd_gen(const std::string& name, const std::string& out, bool as_json) {
    CellComplex complex;
    if (name == "sphere") complex = make_sphere().complex();
    else if (name == "square") complex = make_square_knot().complex();
    else if (name == "torus") complex = make_torus().complex();
    else if (name == "pinched") complex = make_pinched_spheres().complex();
    else if (name == "product-cylinder") complex = make_product_cylinder().complex();
    else if (name == "shift-cylinder") complex = make_shift_cylinder().complex();
    else if (name == "bulge-cylinder") complex = make_bulge_cylinder().complex();
    else {
        std::cerr << "unknown fixture '" << name << "'\n";
        return kExitUsage;
    }
    if (as_json)
        std::cout << json{{"command", "gen"}, {"name", name}, {"complex", cells_json(complex)}}
                         .dump(2)
                  << '\n';
    else
        write_output(out, to_text(complex));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubical knot diagrams: validation, moves, slicing and certificate search"};
    app.require_subcommand(1);
    app.fallthrough();  // accept global flags after the subcommand
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output with stable field names");

    std::string file = "-", file_b = "-", out = "-", gen_name;
    std::size_t move_index = 0;
    int m = 2, level_int = 1;
    double level = 0.5;
    int max_moves = 8, max_subdivision = 1;
    std::size_t max_states = 100000;
    bool normalize = false;

    auto* validate = app.add_subcommand("validate", "check a diagram is a cubical knot");
    validate->add_option("file", file, "cell list file ('-' for stdin)");

    auto* info = app.add_subcommand("info", "cell counts, invariants and tubularity");
    info->add_option("file", file, "cell list file");

    auto* moves_cmd = app.add_subcommand("moves", "list legal exchanges, deterministically");
    moves_cmd->add_option("file", file, "cell list file");

    auto* apply = app.add_subcommand("apply", "apply an enumerated exchange by index");
    apply->add_option("file", file, "cell list file");
    apply->add_option("--move", move_index, "move index from 'moves'")->required();
    apply->add_option("-o,--out", out, "output file");

    auto* subdivide = app.add_subcommand("subdivide", "refine every cell m-fold");
    subdivide->add_option("file", file, "cell list file");
    subdivide->add_option("-m,--factor", m, "subdivision factor (>= 2)")->required();
    subdivide->add_option("-o,--out", out, "output file");

    auto* slice = app.add_subcommand("slice", "cut a cylinder at a non-integer level");
    slice->add_option("file", file, "cell list file (3-complex in ambient 5)");
    slice->add_option("--level", level, "slice parameter, e.g. 1.5")->required();
    slice->add_option("-o,--out", out, "output file");

    auto* sweep_cmd = app.add_subcommand("sweep", "carry one level of a cylinder");
    sweep_cmd->add_option("file", file, "cell list file (3-complex in ambient 5)");
    sweep_cmd->add_option("--level", level_int, "interior integer level")->required();
    sweep_cmd->add_option("-o,--out", out, "output file");

    auto* carry = app.add_subcommand("carry", "certificate from the bottom to the top slice");
    carry->add_option("file", file, "cell list file (3-complex in ambient 5)");
    carry->add_option("-o,--out", out, "output file");

    auto* search = app.add_subcommand("search", "breadth-first equivalence certificate search");
    search->add_option("source", file, "source cell list file")->required();
    search->add_option("target", file_b, "target cell list file")->required();
    search->add_option("--max-moves", max_moves, "move budget");
    search->add_option("--max-states", max_states, "state budget");
    search->add_flag("--normalize", normalize, "match targets up to integer translation");
    search->add_option("--max-subdivision", max_subdivision,
                       "retry after refining both diagrams up to this factor");
    search->add_option("-o,--out", out, "certificate output file");

    auto* replay_cmd = app.add_subcommand("replay", "verify a certificate step by step");
    replay_cmd->add_option("file", file, "certificate file");

    auto* gen = app.add_subcommand("gen", "write a built-in fixture");
    gen->add_option("name", gen_name,
                    "sphere|square|torus|pinched|product-cylinder|shift-cylinder|bulge-cylinder")
        ->required();
    gen->add_option("-o,--out", out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, as_json);
        if (info->parsed()) return cmd_info(file, as_json);
        if (moves_cmd->parsed()) return cmd_moves(file, as_json);
        if (apply->parsed()) return cmd_apply(file, move_index, out, as_json);
        if (subdivide->parsed()) return cmd_subdivide(file, m, out, as_json);
        if (slice->parsed()) return cmd_slice(file, level, out, as_json);
        if (sweep_cmd->parsed()) return cmd_sweep(file, level_int, out, as_json);
        if (carry->parsed()) return cmd_carry(file, out, as_json);
        if (search->parsed())
            return cmd_search(file, file_b, max_moves, max_states, normalize, max_subdivision,
                              out, as_json);
        if (replay_cmd->parsed()) return cmd_replay(file, as_json);
        if (gen->parsed()) return cmd_gen(gen_name, out, as_json);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvalidSlice& e) {
        std::cerr << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitUsage;
}
