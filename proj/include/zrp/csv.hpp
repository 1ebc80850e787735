#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace zrp
{
//! 17 significant digits, "inf"/"-inf"/"nan" for non-finite values
std::string format_real(double value);

//! Comma-separated row terminated by a single LF
void write_csv_row(std::ostream& os, std::vector<double> const& values);
void write_csv_header(std::ostream& os,
                      std::vector<std::string> const& columns);

//! n evenly spaced points from lo to hi inclusive (lo alone if n == 1)
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace zrp
