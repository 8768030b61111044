#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cps/pdb.hpp"
#include "json.hpp"

namespace cps::io {
namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = line.find(',');
        out.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        line.remove_prefix(comma + 1);
    }
    return out;
}

bool parse_double(std::string_view field, double& value)
{
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    return !field.empty() && ec == std::errc{} && ptr == end;
}

Chain build_chain(std::vector<Point> points, std::vector<double> weights)
{
    if (points.empty()) throw ParseError("chain file holds no points");
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ParseError("chain weights must be positive and finite");
    }
    try {
        return Chain(std::move(points), std::move(weights));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

Chain parse_csv(std::string_view text)
{
    std::vector<Point> points;
    std::vector<double> weights;
    std::size_t dim = 0;
    bool weighted = false;
    std::size_t columns = 0;
    std::size_t line_no = 0;

    while (!text.empty()) {
        const auto eol = text.find('\n');
        const auto line = trim(text.substr(0, eol));
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto fields = split_commas(line);
        double probe = 0.0;
        if (columns == 0 && !parse_double(fields.front(), probe)) {
            // Header row.
            std::vector<std::string> names(fields.begin(), fields.end());
            if (names == std::vector<std::string>{"x", "y"}) dim = 2;
            else if (names == std::vector<std::string>{"x", "y", "weight"}) dim = 2, weighted = true;
            else if (names == std::vector<std::string>{"x", "y", "z"}) dim = 3;
            else if (names == std::vector<std::string>{"x", "y", "z", "weight"}) dim = 3, weighted = true;
            else throw ParseError(fmt::format("line {}: unrecognized header '{}'", line_no, line));
            columns = fields.size();
            continue;
        }
        if (columns == 0) {
            columns = fields.size();
            if (columns < 2 || columns > 4) {
                throw ParseError(fmt::format("line {}: expected 2 to 4 columns, got {}", line_no, columns));
            }
            dim = columns == 2 ? 2 : 3;
            weighted = columns == 4;
        }
        if (fields.size() != columns) {
            throw ParseError(fmt::format("line {}: ragged row ({} columns, expected {})", line_no, fields.size(), columns));
        }
        double vals[4] = {};
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (!parse_double(fields[k], vals[k]) || !std::isfinite(vals[k])) {
                throw ParseError(fmt::format("line {}: bad number '{}'", line_no, fields[k]));
            }
        }
        points.push_back(dim == 2 ? Point(vals[0], vals[1]) : Point(vals[0], vals[1], vals[2]));
        if (weighted) weights.push_back(vals[dim]);
    }
    return build_chain(std::move(points), std::move(weights));
}

Chain parse_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(fmt::format("invalid JSON: {}", e.what()));
    }
    const nlohmann::json* pts = &doc;
    std::vector<double> weights;
    if (doc.is_object()) {
        if (!doc.contains("points")) throw ParseError("JSON chain object lacks \"points\"");
        pts = &doc.at("points");
        if (doc.contains("weights")) {
            const auto& ws = doc.at("weights");
            if (!ws.is_array()) throw ParseError("\"weights\" must be an array");
            for (const auto& w : ws) {
                if (!w.is_number()) throw ParseError("weights must be numbers");
                weights.push_back(w.get<double>());
            }
        }
    }
    if (!pts->is_array()) throw ParseError("JSON chain must be an array of coordinate arrays");
    std::vector<Point> points;
    std::size_t dim = 0;
    for (const auto& row : *pts) {
        if (!row.is_array() || row.size() < 2 || row.size() > 3) {
            throw ParseError("each point must be an array of 2 or 3 numbers");
        }
        if (dim == 0) dim = row.size();
        if (row.size() != dim) throw ParseError("ragged point arrays");
        double vals[3] = {};
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!row[k].is_number()) throw ParseError("coordinates must be numbers");
            vals[k] = row[k].get<double>();
            if (!std::isfinite(vals[k])) throw ParseError("coordinates must be finite");
        }
        points.push_back(dim == 2 ? Point(vals[0], vals[1]) : Point(vals[0], vals[1], vals[2]));
    }
    if (!weights.empty() && weights.size() != points.size()) {
        throw ParseError("weights array must parallel the points array");
    }
    return build_chain(std::move(points), std::move(weights));
}

}  // namespace

ChainFormat format_from_path(const std::filesystem::path& path)
{
    const auto ext = path.extension().string();
    if (ext == ".csv") return ChainFormat::csv;
    if (ext == ".json") return ChainFormat::json;
    throw ParseError(fmt::format("cannot infer chain format from '{}'", path.string()));
}

Chain parse_chain(std::string_view text, ChainFormat format)
{
    return format == ChainFormat::csv ? parse_csv(text) : parse_json(text);
}

std::string format_chain(const Chain& chain, ChainFormat format)
{
    if (format == ChainFormat::json) {
        nlohmann::json doc;
        doc["points"] = nlohmann::json::array();
        for (const auto& p : chain.points()) {
            doc["points"].push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
        }
        if (chain.has_weights()) doc["weights"] = chain.explicit_weights();
        return doc.dump() + "\n";
    }
    std::string out = chain.dim() == 2 ? "x,y" : "x,y,z";
    if (chain.has_weights()) out += ",weight";
    out += "\n";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& p = chain[i];
        for (std::size_t k = 0; k < p.dim(); ++k) {
            if (k > 0) out += ',';
            out += fmt::format("{:.17g}", p[k]);
        }
        if (chain.has_weights()) out += fmt::format(",{:.17g}", chain.weight(i));
        out += '\n';
    }
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Chain load_chain(const std::filesystem::path& path, ChainFormat format)
{
    return parse_chain(read_file(path), format);
}

void save_chain(const Chain& chain, const std::filesystem::path& path, ChainFormat format)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(fmt::format("cannot write '{}'", path.string()));
    out << format_chain(chain, format);
    if (!out) throw ParseError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace cps::io
