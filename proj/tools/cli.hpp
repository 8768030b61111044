#pragma once

#include <iosfwd>
#include <string>

#include "cps/geometry.hpp"
#include "cps/pdb.hpp"

namespace cps::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoSolution = 1;
inline constexpr int kExitUsage = 2;

struct LoadedChain {
    std::string id;
    Chain chain;
};

/// Resolves an input argument: `file.pdb[:C]` (also .ent), `file.csv` or `file.json`.
/// For PDB files the id is `<stem>.<chain>` in lowercase, e.g. `107j.a`.
LoadedChain load_input(const std::string& spec, const io::PdbSelection& base);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cps::cli
