#pragma once

#include <string>

#include "json.hpp"
#include "instanton/lattice.hpp"

namespace instanton::lattice {

/// Integers: JSON integers or decimal strings. Rationals: "p/q", "-3", "0.125".
Int int_from_json(const nlohmann::json& j);
Rat rat_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Int& v);
nlohmann::json to_json(const Rat& v);

MarkedLattice marked_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MarkedLattice& m);

IntMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IntMatrix& m);

/// {"source": ..., "target": ..., "mu": [[...]], "word_bound": 8, "expect": {...}}
struct TorelliFixture {
    std::string name;
    MarkedLattice source;
    MarkedLattice target;
    IntMatrix mu;
    std::size_t word_bound = 8;
    std::string expected_failure;        // empty: all conditions hold
    std::optional<std::vector<std::size_t>> expected_word;
};

TorelliFixture torelli_fixture_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TorelliFixture& f);

/// A fixture document holds "marked" lattices and/or "torelli" cases.
struct FixtureDocument {
    std::vector<MarkedLattice> marked;
    std::vector<TorelliFixture> torelli;
};

FixtureDocument load_fixture_file(const std::string& path);

}  // namespace instanton::lattice
