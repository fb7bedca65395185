// CSV ingestion and emission for the documented formats:
//   univariate series  "t,y"           rows t = 0..n
//   regression sample  "t,y,x1,..,xd"  rows t = 1..n
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "seqemp/series.hpp"

namespace seqemp {

struct CsvParseError : std::runtime_error {
    CsvParseError(const std::string& message, std::size_t line)
        : std::runtime_error("csv line " + std::to_string(line) + ": " + message), line(line) {}
    std::size_t line;
};

void write_series_csv(std::ostream& os, const UnivariateSeries& series);
void write_regression_csv(std::ostream& os, const RegressionSample& sample);

UnivariateSeries read_series_csv(std::istream& is);
RegressionSample read_regression_csv(std::istream& is);

UnivariateSeries read_series_csv_file(const std::string& path);
RegressionSample read_regression_csv_file(const std::string& path);

} // namespace seqemp
