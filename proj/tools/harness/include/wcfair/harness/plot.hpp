#pragma once

#include <filesystem>
#include <string>

#include "wcfair/harness/results.hpp"
#include "wcfair/lp.hpp"

namespace wcfair::harness {

// Line chart of R (rawlsian) or U (utilitarian) against k, one polyline per
// method, for the rows with the given objective and lambda. Repeated rows of
// one (method, k), e.g. several seeds, are averaged. Throws DataError on an
// empty selection.
std::string render_svg(const ResultsTable& table, Objective objective,
                       double lambda, const std::string& title);

void write_plot(const std::filesystem::path& results, Objective objective,
                double lambda, const std::filesystem::path& out);

}  // namespace wcfair::harness
