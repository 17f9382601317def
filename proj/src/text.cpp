#include "coref/text.hpp"

namespace coref::text {

uint32_t decode_utf8(std::string_view s, size_t& pos) {
  if (pos >= s.size()) return 0xFFFD;
  unsigned char c0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](size_t i) {
    return pos + i < s.size() &&
           (static_cast<unsigned char>(s[pos + i]) & 0xC0) == 0x80;
  };
  if (c0 < 0x80) {
    ++pos;
    return c0;
  }
  if ((c0 & 0xE0) == 0xC0 && cont(1)) {
    uint32_t cp = (static_cast<uint32_t>(c0 & 0x1F) << 6) |
                  (static_cast<unsigned char>(s[pos + 1]) & 0x3F);
    pos += 2;
    return cp;
  }
  if ((c0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    uint32_t cp = (static_cast<uint32_t>(c0 & 0x0F) << 12) |
                  ((static_cast<unsigned char>(s[pos + 1]) & 0x3F) << 6) |
                  (static_cast<unsigned char>(s[pos + 2]) & 0x3F);
    pos += 3;
    return cp;
  }
  if ((c0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    uint32_t cp = (static_cast<uint32_t>(c0 & 0x07) << 18) |
                  ((static_cast<unsigned char>(s[pos + 1]) & 0x3F) << 12) |
                  ((static_cast<unsigned char>(s[pos + 2]) & 0x3F) << 6) |
                  (static_cast<unsigned char>(s[pos + 3]) & 0x3F);
    pos += 4;
    return cp;
  }
  ++pos;
  return 0xFFFD;
}

namespace {

bool is_upper_cp(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;  // Latin-1 uppercase
  switch (cp) {
    case 0x011E:  // G-breve
    case 0x0130:  // dotted I
    case 0x015E:  // S-cedilla
      return true;
    default:
      return false;
  }
}

uint32_t lower_cp(uint32_t cp) {
  if (cp == 'I') return 0x0131;    // Turkish: I -> dotless i
  if (cp == 0x0130) return 'i';    // dotted I -> i
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x011E) return 0x011F;  // G-breve
  if (cp == 0x015E) return 0x015F;  // S-cedilla
  return cp;
}

void encode_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

bool starts_uppercase(std::string_view s) {
  size_t pos = 0;
  return is_upper_cp(decode_utf8(s, pos));
}

std::string fold_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t pos = 0;
  while (pos < s.size()) encode_utf8(out, lower_cp(decode_utf8(s, pos)));
  return out;
}

std::string_view strip_apostrophe(std::string_view s) {
  size_t apostrophe = s.find('\'');
  return apostrophe == std::string_view::npos ? s : s.substr(0, apostrophe);
}

}  // namespace coref::text
