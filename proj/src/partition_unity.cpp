#include "cantor/partition_unity.hpp"

// Template implementations live in the header; this anchors the two value
// types used across the project.
namespace cantor {
namespace {
[[maybe_unused]] auto anchor_double = &partition_of_unity<double>;
[[maybe_unused]] auto anchor_rat = &partition_of_unity<Rational>;
[[maybe_unused]] auto anchor_ext_double = &extend_partition<double>;
[[maybe_unused]] auto anchor_ext_rat = &extend_partition<Rational>;
}  // namespace
}  // namespace cantor
