#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cps/pdb.hpp"
#include "cps/solver.hpp"

namespace cps::bench {

struct BenchRow {
    std::string chain_a_id;
    std::string chain_b_id;
    std::size_t len_a = 0;
    std::size_t len_b = 0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
    std::size_t k_star = 0;
    double elapsed_seconds = 0.0;
    std::uint64_t peak_cells = 0;
    EndpointMode endpoint_mode = EndpointMode::free_dogs;
    std::optional<std::size_t> r_cap_used;
};

/// Comparable fields only; elapsed time is left to the caller.
nlohmann::json row_json(const BenchRow& row);

struct ReferenceRow {
    std::string chain_b;
    std::size_t len_b = 0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
    std::size_t expected_k_star = 0;
};

struct ReferenceTables {
    std::string chain_a;
    std::size_t len_a = 0;
    std::vector<std::pair<int, std::vector<ReferenceRow>>> tables;

    [[nodiscard]] const std::vector<ReferenceRow>& table(int number) const;
};

ReferenceTables load_reference_tables(const std::filesystem::path& path);

/// "107j.a" -> {"107j", 'A'}; "1toh" -> {"1toh", nullopt}.
std::pair<std::string, std::optional<char>> split_chain_id(const std::string& id);

struct BenchOptions {
    int table = 0;
    std::vector<std::string> rows;
    bool fetch = false;
    std::string out_format = "csv";
    std::optional<std::filesystem::path> output;
    std::optional<double> timeout_seconds;
    std::optional<std::size_t> warm_cap;
    std::filesystem::path cache_root;
    std::filesystem::path tables_path;
    io::Transport transport;
};

int run_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

}  // namespace cps::bench
