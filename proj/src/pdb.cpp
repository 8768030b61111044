#include <algorithm>
#include <charconv>
#include <limits>

#include <fmt/format.h>

#include "cps/pdb.hpp"

namespace cps::io {
namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// 1-based inclusive column range; short lines yield an empty field.
std::string_view columns(std::string_view line, std::size_t first, std::size_t last)
{
    if (line.size() < first) return {};
    return line.substr(first - 1, std::min(last, line.size()) - (first - 1));
}

double parse_real(std::string_view line, std::size_t first, std::size_t last, std::size_t line_no)
{
    const auto field = trim(columns(line, first, last));
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError(fmt::format("line {}: malformed number '{}' in columns {}-{}", line_no, field, first, last));
    }
    return value;
}

int parse_int(std::string_view line, std::size_t first, std::size_t last, std::size_t line_no)
{
    const auto field = trim(columns(line, first, last));
    int value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError(fmt::format("line {}: malformed integer '{}' in columns {}-{}", line_no, field, first, last));
    }
    return value;
}

}  // namespace

BackboneRecord parse_pdb(std::string_view text, const PdbSelection& selection)
{
    std::string pdb_id;
    std::optional<char> chain_id = selection.chain_id;
    std::vector<Point> points;
    std::vector<int> residues;
    int model = 1;
    bool saw_chain = false;

    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const auto record = columns(line, 1, 6);
        if (record == "HEADER") {
            pdb_id = std::string(trim(columns(line, 63, 66)));
            continue;
        }
        if (record == "MODEL ") {
            model = parse_int(line, 11, 14, line_no);
            continue;
        }
        if (record == "ENDMDL") {
            if (model == selection.model) break;
            continue;
        }
        const bool atom = record == "ATOM  ";
        const bool hetatm = record == "HETATM";
        if (!atom && !(hetatm && selection.include_hetatm)) continue;
        if (model != selection.model) continue;
        if (trim(columns(line, 13, 16)) != "CA") continue;
        const char altloc = line.size() >= 17 ? line[16] : ' ';
        if (altloc != ' ' && altloc != selection.altloc) continue;
        const char chain = line.size() >= 22 ? line[21] : ' ';
        if (!chain_id) chain_id = chain;
        if (chain != *chain_id) continue;
        saw_chain = true;

        const int resseq = parse_int(line, 23, 26, line_no);
        if (!residues.empty() && resseq <= residues.back()) continue;
        const double x = parse_real(line, 31, 38, line_no);
        const double y = parse_real(line, 39, 46, line_no);
        const double z = parse_real(line, 47, 54, line_no);
        points.emplace_back(x, y, z);
        residues.push_back(resseq);
    }

    if (!chain_id || !saw_chain) {
        throw ParseError(chain_id ? fmt::format("chain '{}' not found", *chain_id)
                                  : std::string("no CA atoms found"));
    }
    if (points.empty()) throw ParseError("empty selection");
    return BackboneRecord{std::move(pdb_id), *chain_id, Chain(std::move(points)), std::move(residues)};
}

}  // namespace cps::io
