#pragma once

#include "pizza/reductions.hpp"

#include <string>

namespace pizza {

struct RenderOptions {
    int size = 512;  // pixels per unit
    const FeasibleSolution* path = nullptr;
    const StraightCutSet* lines = nullptr;
};

// Static SVG of a normalized instance with an optional path or line overlay.
std::string render_svg(const PizzaInstance& inst, const RenderOptions& opt = {});

}  // namespace pizza
