#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circmine/datamodel.hpp"

namespace circmine {

/// The 21 top-level Library of Congress classes plus the named subclasses
/// used throughout the toolkit, as a flat code -> description table.
const std::vector<CategoryRecord>& builtin_lc_table();

/// Description for a known code; nullopt for codes not in the table.
std::optional<std::string_view> lc_description(std::string_view code);

/// A code is classifiable when it is 1-3 uppercase letters and its first
/// letter is one of the 21 top-level classes.
bool is_classifiable_code(std::string_view code);

bool is_lc_class_letter(char c);

/// The 21 class letters in table order.
const std::string& lc_class_letters();

}  // namespace circmine
