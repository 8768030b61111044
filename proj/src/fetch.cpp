#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

#include "cps/pdb.hpp"

namespace cps::io {

bool valid_pdb_id(std::string_view id)
{
    if (id.size() != 4) return false;
    if (!std::isdigit(static_cast<unsigned char>(id[0]))) return false;
    return std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

Transport https_transport()
{
    return [](const std::string& host, const std::string& path) -> HttpResponse {
        httplib::SSLClient client(host);
        client.set_connection_timeout(20);
        client.set_read_timeout(60);
        client.set_follow_location(true);
        auto res = client.Get(path);
        if (!res) {
            throw FetchError(fmt::format("request to {}{} failed: {}", host, path, httplib::to_string(res.error())));
        }
        return {res->status, res->body};
    };
}

std::filesystem::path default_cache_root()
{
    if (const char* env = std::getenv("CPS_PDB_CACHE"); env != nullptr && *env != '\0') return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
        return std::filesystem::path(xdg) / "cps3f" / "pdb";
    }
    if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
        return std::filesystem::path(home) / ".cache" / "cps3f" / "pdb";
    }
    return std::filesystem::current_path() / "pdb_cache";
}

PdbFetcher::PdbFetcher(std::filesystem::path cache_root, Transport transport)
    : root_(std::move(cache_root)), transport_(std::move(transport))
{
}

std::filesystem::path PdbFetcher::cache_path(std::string_view pdb_id) const
{
    std::string id(pdb_id);
    std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return std::tolower(c); });
    return root_ / (id + ".pdb");
}

std::string PdbFetcher::fetch(std::string_view pdb_id)
{
    if (!valid_pdb_id(pdb_id)) throw FetchError(fmt::format("invalid PDB id '{}'", pdb_id));
    const auto path = cache_path(pdb_id);
    if (std::filesystem::exists(path)) return read_file(path);

    std::string upper(pdb_id);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    ++requests_;
    const auto res = transport_("files.rcsb.org", "/download/" + upper + ".pdb");
    if (res.status == 404) throw FetchError(fmt::format("PDB entry '{}' not found", pdb_id));
    if (res.status != 200) throw FetchError(fmt::format("PDB download of '{}' returned HTTP {}", pdb_id, res.status));

    std::lock_guard lock(write_mutex_);
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    const auto tmp = path.string() + ".part";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << res.body;
        if (!out) throw FetchError(fmt::format("cannot write cache file '{}'", tmp));
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw FetchError(fmt::format("cannot move '{}' into the cache: {}", tmp, ec.message()));
    return res.body;
}

}  // namespace cps::io
