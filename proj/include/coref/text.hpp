// UTF-8 text helpers tuned for Turkish orthography: capitalization tests,
// case folding, and the apostrophe convention that separates proper-noun
// suffixes ("Türkiye'den" -> "Türkiye").
#ifndef COREF_TEXT_HPP
#define COREF_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace coref::text {

// Decodes the codepoint starting at `pos`, advancing it. Returns U+FFFD on
// malformed input (and advances one byte).
uint32_t decode_utf8(std::string_view s, size_t& pos);

// True if the first codepoint is an uppercase letter (ASCII, Latin-1
// supplement, or the Turkish letters G-breve, dotted I, S-cedilla).
bool starts_uppercase(std::string_view s);

// Lowercases codepoint-wise with Turkish rules (I -> dotless i, dotted I ->
// i) plus ASCII and Latin-1.
std::string fold_lower(std::string_view s);

// Text before the first apostrophe; the unchanged input if there is none.
std::string_view strip_apostrophe(std::string_view s);

}  // namespace coref::text

#endif  // COREF_TEXT_HPP
