#include "seqemp/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace seqemp {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& field, std::size_t line) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw CsvParseError("cannot parse numeric field '" + field + "'", line);
    }
    while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t')) ++pos;
    if (pos != field.size()) {
        throw CsvParseError("trailing characters in numeric field '" + field + "'", line);
    }
    return v;
}

} // namespace

void write_series_csv(std::ostream& os, const UnivariateSeries& series) {
    series.validate();
    os << "t,y\n";
    for (std::size_t t = 0; t < series.values.size(); ++t) {
        os << t << ',' << fmt(series.values[t]) << '\n';
    }
}

void write_regression_csv(std::ostream& os, const RegressionSample& sample) {
    sample.validate();
    os << "t,y";
    for (std::size_t k = 1; k <= sample.d; ++k) os << ",x" << k;
    os << '\n';
    for (std::size_t i = 0; i < sample.n(); ++i) {
        os << (i + 1) << ',' << fmt(sample.responses[i]);
        for (std::size_t k = 0; k < sample.d; ++k) os << ',' << fmt(sample.regressors[i][k]);
        os << '\n';
    }
}

UnivariateSeries read_series_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw CsvParseError("empty input", 1);
    ++lineno;
    {
        auto fields = split_line(line);
        if (fields.size() != 2 || fields[0] != "t" || fields[1] != "y") {
            throw CsvParseError("expected header 't,y'", lineno);
        }
    }
    UnivariateSeries series;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != 2) throw CsvParseError("expected two fields", lineno);
        const double t = parse_double(fields[0], lineno);
        if (static_cast<std::size_t>(t) != series.values.size()) {
            throw CsvParseError("index column must run 0..n without gaps", lineno);
        }
        series.values.push_back(parse_double(fields[1], lineno));
    }
    if (series.values.size() < 2) throw CsvParseError("need at least two rows", lineno);
    series.n = series.values.size() - 1;
    series.origin = "ingested";
    series.validate();
    return series;
}

RegressionSample read_regression_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw CsvParseError("empty input", 1);
    ++lineno;
    std::size_t d;
    {
        auto fields = split_line(line);
        if (fields.size() < 3 || fields[0] != "t" || fields[1] != "y") {
            throw CsvParseError("expected header 't,y,x1,...,xd'", lineno);
        }
        d = fields.size() - 2;
        for (std::size_t k = 0; k < d; ++k) {
            if (fields[2 + k] != "x" + std::to_string(k + 1)) {
                throw CsvParseError("expected header column 'x" + std::to_string(k + 1) + "'",
                                    lineno);
            }
        }
    }
    RegressionSample sample;
    sample.d = d;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != 2 + d) {
            throw CsvParseError("expected " + std::to_string(2 + d) + " fields", lineno);
        }
        const double t = parse_double(fields[0], lineno);
        if (static_cast<std::size_t>(t) != sample.n() + 1) {
            throw CsvParseError("index column must run 1..n without gaps", lineno);
        }
        sample.responses.push_back(parse_double(fields[1], lineno));
        std::vector<double> x(d);
        for (std::size_t k = 0; k < d; ++k) x[k] = parse_double(fields[2 + k], lineno);
        sample.regressors.push_back(std::move(x));
    }
    if (sample.n() == 0) throw CsvParseError("no data rows", lineno);
    sample.origin = "ingested";
    sample.validate();
    return sample;
}

namespace {

template <typename T, T (*Reader)(std::istream&)>
T read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return Reader(f);
}

} // namespace

UnivariateSeries read_series_csv_file(const std::string& path) {
    return read_file<UnivariateSeries, read_series_csv>(path);
}

RegressionSample read_regression_csv_file(const std::string& path) {
    return read_file<RegressionSample, read_regression_csv>(path);
}

} // namespace seqemp
