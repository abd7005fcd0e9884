#pragma once

#include "cantor/report.hpp"

namespace cantor {

/// The acceptance checks, one per criterion. Each report carries a final
/// "runtime" row holding the elapsed seconds against the stated budget.
Report acceptance_criterion(int k);

int acceptance_criteria_count();
std::string acceptance_criterion_title(int k);

}  // namespace cantor
