#include "cubeknot/io.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace cubeknot {

namespace {

constexpr const char* kCellsMagic = "cubeknot";
constexpr const char* kCertMagic = "cubeknot-cert";

std::string strip(const std::string& line) {
    std::string out = line;
    if (auto pos = out.find('#'); pos != std::string::npos) out.erase(pos);
    const auto first = out.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = out.find_last_not_of(" \t\r");
    return out.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

long parse_int(const std::string& token, std::size_t line) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(token, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, found '" + token + "'");
    }
    if (used != token.size())
        throw ParseError(line, "expected an integer, found '" + token + "'");
    return value;
}

// "<x1> ... <xn> : <a1> ... <ak>"
Cell parse_cell_body(const std::string& body, int n, std::size_t line) {
    const auto halves = split(body, ':');
    if (halves.size() > 2)
        throw ParseError(line, "cell has more than one ':' separator");
    if (halves.empty() || body.find(':') == std::string::npos)
        throw ParseError(line, "cell is missing the ':' separator");

    std::istringstream coords(halves[0]);
    std::vector<std::int32_t> anchor;
    std::string token;
    while (coords >> token) anchor.push_back(static_cast<std::int32_t>(parse_int(token, line)));
    if (static_cast<int>(anchor.size()) != n)
        throw ParseError(line, "expected " + std::to_string(n) + " coordinates, found " +
                                   std::to_string(anchor.size()));

    std::vector<int> axes;
    if (halves.size() == 2) {
        std::istringstream ax(halves[1]);
        while (ax >> token) axes.push_back(static_cast<int>(parse_int(token, line)));
    }
    try {
        return Cell::make(anchor, axes);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
    }
}

struct Header {
    int dim = 0;
    LatticeContext ctx;
};

Header parse_header(const std::string& text, std::size_t line) {
    std::istringstream is(text);
    std::string magic;
    long k = -1, n = -1, scale = -1;
    is >> magic >> k >> n >> scale;
    if (!is || magic != kCellsMagic)
        throw ParseError(line, "expected header 'cubeknot <k> <n> <scale>'");
    std::string extra;
    if (is >> extra) throw ParseError(line, "trailing tokens after header");
    if (n < 3 || n > kMaxAmbientDim)
        throw ParseError(line, "ambient dimension must be 3, 4 or 5");
    if (k < 0 || k > n) throw ParseError(line, "cell dimension out of range");
    if (scale < 1 || scale > std::numeric_limits<std::int32_t>::max())
        throw ParseError(line, "scale must be a positive integer");
    return {static_cast<int>(k), LatticeContext{static_cast<int>(n), static_cast<std::int32_t>(scale)}};
}

struct LineReader {
    std::istream& in;
    std::size_t number = 0;

    std::optional<std::pair<std::size_t, std::string>> next() {
        std::string raw;
        while (std::getline(in, raw)) {
            ++number;
            const std::string text = strip(raw);
            if (!text.empty()) return std::make_pair(number, text);
        }
        return std::nullopt;
    }
};

}  // namespace

std::string to_text(const CellComplex& complex) {
    std::ostringstream os;
    os << kCellsMagic << ' ' << complex.dim() << ' ' << complex.context().ambient_dim << ' '
       << complex.context().scale << '\n';
    for (const Cell& c : complex.cells())
        os << "cell " << to_text(c, complex.context().ambient_dim) << '\n';
    return os.str();
}

CellComplex parse_cells(std::istream& in) {
    LineReader reader{in};
    const auto head = reader.next();
    if (!head) throw ParseError(1, "empty input, expected 'cubeknot <k> <n> <scale>'");
    const Header header = parse_header(head->second, head->first);

    std::vector<Cell> cells;
    std::unordered_set<Cell, CellHash> seen;
    while (auto entry = reader.next()) {
        const auto& [line, text] = *entry;
        if (text.rfind("cell ", 0) != 0 && text != "cell")
            throw ParseError(line, "expected a 'cell' line");
        Cell c = parse_cell_body(text.substr(4), header.ctx.ambient_dim, line);
        if (c.dim() != header.dim)
            throw ParseError(line, "cell dimension " + std::to_string(c.dim()) +
                                       " does not match header dimension " +
                                       std::to_string(header.dim));
        if (!seen.insert(c).second) throw ParseError(line, "duplicate cell");
        cells.push_back(c);
    }
    return CellComplex(header.ctx, header.dim, std::move(cells));
}

CellComplex parse_cells(const std::string& text) {
    std::istringstream is(text);
    return parse_cells(is);
}

namespace {

std::string cell_list_text(const std::vector<Cell>& cells, int n) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ", ";
        out += to_text(cells[i], n);
    }
    return out;
}

std::vector<Cell> parse_cell_list(const std::string& text, int n, std::size_t line) {
    std::vector<Cell> out;
    for (const std::string& item : split(text, ',')) {
        const std::string body = strip(item);
        if (body.empty()) throw ParseError(line, "empty cell in list");
        out.push_back(parse_cell_body(body, n, line));
    }
    if (out.empty()) throw ParseError(line, "empty cell list");
    if (!std::is_sorted(out.begin(), out.end()))
        throw ParseError(line, "cell list must be sorted");
    return out;
}

}  // namespace

std::string to_text(const MoveSequence& seq) {
    const int n = seq.initial.context().ambient_dim;
    std::ostringstream os;
    os << kCertMagic << '\n';
    os << to_text(seq.initial.complex());
    for (const MoveStep& step : seq.steps) {
        if (const auto* m1 = std::get_if<SubdivisionStep>(&step)) {
            os << "m1 " << m1->factor << '\n';
        } else {
            const auto& mv = std::get<FaceBoundaryMove>(step);
            os << "m2 " << to_text(mv.carrier, n) << " | removed: "
               << cell_list_text(mv.removed, n) << " | inserted: "
               << cell_list_text(mv.inserted, n) << '\n';
        }
    }
    os << "digest " << seq.final_digest << '\n';
    return os.str();
}

MoveSequence parse_certificate(std::istream& in) {
    LineReader reader{in};
    auto entry = reader.next();
    if (!entry || entry->second != kCertMagic)
        throw ParseError(entry ? entry->first : 1, "expected 'cubeknot-cert' header");

    entry = reader.next();
    if (!entry) throw ParseError(reader.number + 1, "missing diagram header");
    const Header header = parse_header(entry->second, entry->first);

    MoveSequence seq;
    std::vector<Cell> cells;
    std::unordered_set<Cell, CellHash> seen;
    bool cells_done = false;
    bool digest_done = false;

    while ((entry = reader.next())) {
        const auto& [line, text] = *entry;
        if (digest_done) throw ParseError(line, "content after the digest trailer");
        if (text.rfind("cell", 0) == 0) {
            if (cells_done) throw ParseError(line, "cell line after the first step");
            Cell c = parse_cell_body(text.substr(4), header.ctx.ambient_dim, line);
            if (c.dim() != header.dim) throw ParseError(line, "cell dimension mismatch");
            if (!seen.insert(c).second) throw ParseError(line, "duplicate cell");
            cells.push_back(c);
            continue;
        }
        if (text.rfind("m1 ", 0) == 0) {
            cells_done = true;
            const long m = parse_int(strip(text.substr(3)), line);
            if (m < 2) throw ParseError(line, "subdivision factor must be at least 2");
            seq.steps.emplace_back(SubdivisionStep{static_cast<int>(m)});
            continue;
        }
        if (text.rfind("m2 ", 0) == 0) {
            cells_done = true;
            const auto parts = split(text.substr(3), '|');
            if (parts.size() != 3)
                throw ParseError(line, "expected 'm2 <carrier> | removed: ... | inserted: ...'");
            FaceBoundaryMove mv;
            mv.carrier = parse_cell_body(strip(parts[0]), header.ctx.ambient_dim, line);
            const std::string rm = strip(parts[1]);
            const std::string ins = strip(parts[2]);
            if (rm.rfind("removed:", 0) != 0) throw ParseError(line, "missing 'removed:' section");
            if (ins.rfind("inserted:", 0) != 0)
                throw ParseError(line, "missing 'inserted:' section");
            mv.removed = parse_cell_list(rm.substr(8), header.ctx.ambient_dim, line);
            mv.inserted = parse_cell_list(ins.substr(9), header.ctx.ambient_dim, line);
            seq.steps.emplace_back(std::move(mv));
            continue;
        }
        if (text.rfind("digest ", 0) == 0) {
            seq.final_digest = strip(text.substr(7));
            if (seq.final_digest.empty()) throw ParseError(line, "empty digest");
            digest_done = true;
            continue;
        }
        throw ParseError(line, "unrecognized certificate line");
    }
    if (!digest_done) throw ParseError(reader.number + 1, "missing digest trailer");
    seq.initial = KnotDiagram(CellComplex(header.ctx, header.dim, std::move(cells)));
    return seq;
}

MoveSequence parse_certificate(const std::string& text) {
    std::istringstream is(text);
    return parse_certificate(is);
}

}  // namespace cubeknot
