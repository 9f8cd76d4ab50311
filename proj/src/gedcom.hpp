#pragma once

#include <iosfwd>
#include <vector>

#include "lifegraph/ingest.hpp"

namespace lifegraph::detail {

/// GEDCOM 5.5 subset reader. Produces one profile per INDI record with
/// FAM links resolved; duplicate/self-reference screening happens in the
/// caller.
std::vector<std::pair<std::size_t, ProfileRecord>> read_gedcom(std::istream& in,
                                                               ParseReport& report);

}  // namespace lifegraph::detail
