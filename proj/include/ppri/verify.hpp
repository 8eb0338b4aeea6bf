#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ppri {

struct SuiteReport {
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
    std::optional<std::string> first_counterexample;

    bool ok() const { return passed == total; }
};

// ultrametric, cauchy-product, schur, schatten, lattice.
const std::vector<std::string>& suite_names();

// Runs one registered suite, or every suite for "all". Reports are a pure
// function of (name, seed). UnknownSuite for other names.
std::vector<SuiteReport> run_verify(std::string_view name, std::uint64_t seed);

} // namespace ppri
