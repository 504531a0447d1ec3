#pragma once

#include "pizza/reductions.hpp"
#include "pizza/solver.hpp"

#include <string>
#include <string_view>

namespace pizza {

CHInstance parse_ch(std::string_view text);
std::string serialize_ch(const CHInstance& ch);

CHSolution parse_ch_solution(std::string_view text);
std::string serialize_ch_solution(const CHSolution& sol);

ReductionMeta parse_meta(std::string_view text);
std::string serialize_meta(const ReductionMeta& meta);

StraightCutSet parse_lines(std::string_view text);
std::string serialize_lines(const StraightCutSet& lines);

// Path file: coords are authoritative; z, x, polyline and wraps are derived.
struct PathFile {
    SpherePoint point;
    FeasibleSolution solution;
    bool has_point = false;
};
PathFile parse_path(std::string_view text);
std::string serialize_path(const SpherePoint& p);
std::string serialize_path(const FeasibleSolution& sol);
std::string serialize_report(const SolveReport& rep);

}  // namespace pizza
