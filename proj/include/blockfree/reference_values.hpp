#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace blockfree::reference {

/// Published table rows, as printed.
struct Row {
    std::int64_t n;
    std::string_view exact;
    std::string_view approx;
    std::string_view rel_error;
    std::string_view extra;  // empty unless the table has a fourth value column
};

inline constexpr std::array<Row, 7> kRough1{{
    {4, "0.266667", "0.300542", "0.127032", ""},
    {16, "0.116036", "0.128325", "0.105906", ""},
    {64, "0.045716", "0.047583", "0.040834", ""},
    {256, "0.015896", "0.016123", "0.014298", ""},
    {1024, "0.005122", "0.005146", "0.004675", ""},
    {4096, "0.001573", "0.001575", "0.001456", ""},
    {16384, "0.000468", "0.000468", "0.000438", ""},
}};

inline constexpr std::array<Row, 7> kRough2{{
    {4, "6.667e-02", "1.459e-01", "1.1886", "1.4575"},
    {16, "8.772e-03", "1.559e-02", "0.7776", "1.1962"},
    {64, "3.185e-04", "4.610e-04", "0.4474", "0.7787"},
    {256, "2.628e-06", "3.222e-06", "0.2257", "0.4239"},
    {1024, "4.356e-09", "4.805e-09", "0.1033", "0.2023"},
    {4096, "1.368e-12", "1.428e-12", "0.0438", "0.0875"},
    {16384, "7.902e-17", "8.040e-17", "0.0175", "0.0352"},
}};

inline constexpr std::array<Row, 5> kImpractical{{
    {4, "0.533333", "0.300542", "-0.436484", ""},
    {16, "0.141507", "0.128325", "-0.093156", ""},
    {64, "0.046743", "0.047583", "0.017954", ""},
    {256, "0.015907", "0.016123", "0.013594", ""},
    {1024, "0.005122", "0.005146", "0.004670", ""},
}};

inline constexpr double kEta1 = 0.1866823;
inline constexpr double kEta2 = 2.1555352;

}  // namespace blockfree::reference
