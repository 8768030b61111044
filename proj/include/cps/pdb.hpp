#pragma once

// Alpha-carbon traces from PDB fixed-column text, plain chain files, and a
// caching client for the public PDB archive.

#include <atomic>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cps/geometry.hpp"

namespace cps::io {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BackboneRecord {
    std::string pdb_id;
    char chain_id = ' ';
    Chain chain;
    std::vector<int> residue_numbers;
};

struct PdbSelection {
    /// Chain identifier; nullopt picks the first chain carrying a CA atom.
    std::optional<char> chain_id;
    /// Alternate location kept besides blank.
    char altloc = 'A';
    /// 1-based MODEL to read; files without MODEL records count as model 1.
    int model = 1;
    bool include_hetatm = false;
};

/// One point per residue: CA atoms of the selected chain and model, altloc
/// blank or `altloc`, first occurrence per residue number (residues whose
/// number does not exceed the previous one are skipped). Coordinates come
/// from columns 31-38, 39-46 and 47-54.
BackboneRecord parse_pdb(std::string_view text, const PdbSelection& selection);

inline BackboneRecord parse_pdb(std::string_view text, char chain_id)
{
    PdbSelection sel;
    sel.chain_id = chain_id;
    return parse_pdb(text, sel);
}

enum class ChainFormat { csv, json };

/// Guesses the format from the extension (.csv or .json).
ChainFormat format_from_path(const std::filesystem::path& path);

/// CSV rows are `x,y[,z][,weight]`. A header row naming the columns
/// (x,y[,z][,weight]) disambiguates; without one, 2 columns mean 2D,
/// 3 mean 3D and 4 mean 3D plus weight.
/// JSON is either an array of coordinate arrays or an object
/// {"points": [...], "weights": [...]}.
Chain parse_chain(std::string_view text, ChainFormat format);
std::string format_chain(const Chain& chain, ChainFormat format);

Chain load_chain(const std::filesystem::path& path, ChainFormat format);
void save_chain(const Chain& chain, const std::filesystem::path& path, ChainFormat format);

std::string read_file(const std::filesystem::path& path);

class FetchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed PDB identifier: a digit then three alphanumerics.
bool valid_pdb_id(std::string_view id);

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Performs one GET; throws FetchError when the request cannot be made.
using Transport = std::function<HttpResponse(const std::string& host, const std::string& path)>;

/// HTTPS transport backed by cpp-httplib.
Transport https_transport();

/// Cache root: $CPS_PDB_CACHE, else $XDG_CACHE_HOME/cps3f/pdb, else ~/.cache/cps3f/pdb.
std::filesystem::path default_cache_root();

/// Downloads PDB entries into `<cache>/<id>.pdb` (lowercase id) and serves
/// later requests from the cache.
class PdbFetcher {
public:
    explicit PdbFetcher(std::filesystem::path cache_root, Transport transport = https_transport());

    std::string fetch(std::string_view pdb_id);

    [[nodiscard]] std::filesystem::path cache_path(std::string_view pdb_id) const;
    [[nodiscard]] std::size_t network_requests() const { return requests_.load(); }

private:
    std::filesystem::path root_;
    Transport transport_;
    std::mutex write_mutex_;
    std::atomic<std::size_t> requests_{0};
};

}  // namespace cps::io
