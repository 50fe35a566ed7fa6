#pragma once

#include <string>

#include "hytab/branch.hpp"
#include "hytab/tableau.hpp"

namespace hytab {

// "n. @i a  [rule <- premises]", accessibility formulas marked with '*'.
std::string entry_line(const Branch& b, std::size_t k, Notation notation = Notation::Ascii);
std::string branch_text(const Branch& b, Notation notation = Notation::Ascii);

// The whole tableau; splits are shown as indented sub-branches.
std::string trace_text(const Tableau& t, Notation notation = Notation::Ascii);

}  // namespace hytab
