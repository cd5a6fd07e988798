#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace qreset {

// 12 significant digits, '.' decimal separator independent of locale.
inline std::string num(double v, int digits = 12) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}
