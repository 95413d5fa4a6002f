#pragma once

#include <cstdint>

namespace cuntz {

/// Memory budget for permutation tables, in bytes. Defaults to 512 MiB and
/// can be overridden with the CUNTZ_MAX_TABLE_BYTES environment variable
/// (read once, at first use).
std::uint64_t max_table_bytes();

/// Largest level L with n^L * sizeof(entry) within the budget.
int max_level_for(int n);

}  // namespace cuntz
