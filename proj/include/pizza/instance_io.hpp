#pragma once

#include "pizza/geometry.hpp"

#include <string>
#include <string_view>

namespace pizza {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads the instance document and validates every polygon (orientation, simplicity, holes, weights).
PizzaInstance parse_instance(std::string_view text);
// Canonical form: colors ascending, lowest-terms rationals, two-space indentation.
std::string serialize_instance(const PizzaInstance& inst);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pizza
