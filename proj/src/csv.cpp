#include "zrp/csv.hpp"

#include <cmath>
#include <cstdio>

namespace zrp
{
std::string format_real(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_csv_row(std::ostream& os, std::vector<double> const& values)
{
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (i)
            os << ',';
        os << format_real(values[i]);
    }
    os << '\n';
}

void write_csv_header(std::ostream& os,
                      std::vector<std::string> const& columns)
{
    for (std::size_t i = 0; i < columns.size(); ++i)
    {
        if (i)
            os << ',';
        os << columns[i];
    }
    os << '\n';
}

std::vector<double> linear_grid(double lo, double hi, int n)
{
    std::vector<double> grid(n);
    if (n == 1)
    {
        grid[0] = lo;
        return grid;
    }
    double const step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        grid[i] = lo + i * step;
    grid[n - 1] = hi;
    return grid;
}

}  // namespace zrp
