#pragma once

#include <cyclic/config_lang.hh>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cyclic
{
    /// Bit c (1 <= c <= palette) set means colour c is present.
    using ColourSet = std::uint32_t;

    inline constexpr int max_palette = 31;

    /// Unlisted vertices of one unbounded face: how many there are and which colours they carry.
    struct HiddenSet
    {
        int count = 0;
        ColourSet colours = 0;

        auto operator==(const HiddenSet &) const -> bool = default;
    };

    /// A colouring of everything outside the configuration, as seen by the faces of the pair.
    struct BoundaryScenario
    {
        int delta = 0;
        std::map<char, int> letter_colours;
        /// Keyed by 1-based face index in the reduced block; unbounded faces only.
        std::map<int, HiddenSet> hidden;

        auto palette() const -> int { return delta + 2; }
        auto operator==(const BoundaryScenario &) const -> bool = default;
    };

    auto format_scenario(const BoundaryScenario & s) -> std::string;

    /// Colours already fixed on a face: letters, hidden vertices, and coloured internal vertices.
    /// `partial` maps internal ids to colours (0 or absent = uncoloured).
    auto face_color_footprint(const ReductionPair & pair, const ConfigurationBlock & block, const BoundaryScenario & scenario,
        const FaceSpec & face, const std::map<int, int> & partial) -> ColourSet;

    /// True iff the internal vertices of `block` can be coloured from 1..delta+2 so that every face
    /// of the block carries pairwise distinct colours.
    auto extends(const ReductionPair & pair, const ConfigurationBlock & block, const BoundaryScenario & scenario) -> bool;

    /// Calls `visit` once per orbit of boundary scenarios under permutations of the palette.
    /// Stops early when `visit` returns false. Returns the number of scenarios visited.
    auto enumerate_scenarios(const ReductionPair & pair, int delta, const std::function<bool(const BoundaryScenario &)> & visit)
        -> long long;

    struct ReducibilityOptions
    {
        int workers = 1;
        /// Scenarios with index below this are skipped (resume support).
        long long start_at = 0;
        /// Invoked every `progress_interval` scenarios with the number processed so far.
        std::function<void(long long)> progress;
        long long progress_interval = 1'000'000;
    };

    struct Verdict
    {
        bool reducible = true;
        std::optional<BoundaryScenario> witness;
        long long witness_index = -1;
        long long scenarios = 0;
        long long reduced_extendable = 0;
        long long original_checks = 0;
    };

    /// Reducible iff every scenario that extends to the reduced block also extends to the original.
    /// The witness, if any, is the first failing scenario in enumeration order.
    auto check_reducible(const ReductionPair & pair, int delta, const ReducibilityOptions & options = {}) -> Verdict;
}
