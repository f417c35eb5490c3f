#include "lingaff/soundclass.hpp"

#include <sstream>

#include "lingaff/error.hpp"
#include "lingaff/tsv.hpp"

namespace lingaff {

std::optional<SegmentCategory> category_from_letter(const std::string& letter) {
    if (letter.size() != 1) return std::nullopt;
    switch (letter[0]) {
        case 'P': return SegmentCategory::P;
        case 'T': return SegmentCategory::T;
        case 'S': return SegmentCategory::S;
        case 'K': return SegmentCategory::K;
        case 'M': return SegmentCategory::M;
        case 'N': return SegmentCategory::N;
        case 'R': return SegmentCategory::R;
        case 'W': return SegmentCategory::W;
        case 'J': return SegmentCategory::J;
        case 'H': return SegmentCategory::H;
        case 'V': return SegmentCategory::vowel;
        case '0': return SegmentCategory::ignore;
        default: return std::nullopt;
    }
}

std::string letter_from_category(SegmentCategory c) {
    if (is_consonant(c)) return std::string(1, letter_of(to_sound_class(c)));
    return c == SegmentCategory::vowel ? "V" : "0";
}

ClassMap parse_classmap(const std::string& text, const std::string& origin) {
    ClassMap map;
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 2 || fields[0].empty())
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": expected \"token<TAB>class\"");
        const auto category = category_from_letter(fields[1]);
        if (!category)
            throw ParseError(origin + ":" + std::to_string(line_no) + ": unknown class \"" +
                             fields[1] + "\" (expected one of P T S K M N R W J H V 0)");
        map.table[fields[0]] = *category;
    }
    return map;
}

ClassMap load_classmap(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_classmap(text.str(), path);
}

namespace {

// Default segment inventory. One token per line, tab-separated from its
// class letter; shipped verbatim as data/classmap.tsv.
constexpr const char* kDefaultClassmap = R"(# Dolgopolsky sound classes for a broad IPA segment inventory.
# token<TAB>class with class one of P T S K M N R W J H V 0
# P: labial obstruents
p	P
b	P
f	P
ɸ	P
β	P
pʰ	P
bʰ	P
bʱ	P
pʼ	P
ɓ	P
pf	P
pː	P
bː	P
ᵐb	P
mb	P
# T: dental/alveolar plosives and dental fricatives
t	T
d	T
tʰ	T
dʰ	T
dʱ	T
ʈ	T
ɖ	T
tʼ	T
ɗ	T
θ	T
ð	T
tː	T
dː	T
ⁿd	T
nd	T
# S: sibilant fricatives and affricates
s	S
z	S
ʃ	S
ʒ	S
ʂ	S
ʐ	S
ɕ	S
ʑ	S
ts	S
dz	S
tʃ	S
dʒ	S
ʈʂ	S
ɖʐ	S
tɕ	S
dʑ	S
tsʰ	S
tʃʰ	S
tɕʰ	S
ʈʂʰ	S
tsʼ	S
tʃʼ	S
dʒʱ	S
t͡s	S
d͡z	S
t͡ʃ	S
d͡ʒ	S
t͡ɕ	S
d͡ʑ	S
ʈ͡ʂ	S
ɖ͡ʐ	S
sʼ	S
sː	S
ʃː	S
# K: velar and uvular obstruents, palatal stops
k	K
g	K
ɡ	K
kʰ	K
gʰ	K
ɡʰ	K
gʱ	K
ɡʱ	K
kʼ	K
ɠ	K
q	K
ɢ	K
qʼ	K
ʛ	K
x	K
ɣ	K
χ	K
ʁ	K
c	K
ɟ	K
ç	K
ʝ	K
cʰ	K
kː	K
gː	K
ᵑg	K
ŋg	K
kx	K
# M: m
m	M
ɱ	M
mʼ	M
m̥	M
mː	M
m̩	M
# N: other nasals
n	N
ŋ	N
ɲ	N
ɳ	N
ɴ	N
n̥	N
ŋ̊	N
nʰ	N
nː	N
n̩	N
# R: liquids
r	R
l	R
ɾ	R
ɽ	R
ʀ	R
ɹ	R
ɻ	R
ɭ	R
ʎ	R
ɫ	R
ɬ	R
ɮ	R
r̥	R
l̥	R
rː	R
lː	R
r̩	R
l̩	R
# W: w/v-like
w	W
v	W
ʋ	W
ʍ	W
ɥ	W
w̃	W
# J: palatal glide
j	J
# H: laryngeals
h	H
ɦ	H
ʔ	H
ħ	H
ʕ	H
ʜ	H
ʢ	H
# V: vowels
a	V
e	V
i	V
o	V
u	V
y	V
ɑ	V
ɒ	V
æ	V
ʌ	V
ɛ	V
ə	V
ɘ	V
ɵ	V
ɜ	V
ɞ	V
ɐ	V
ɪ	V
ɨ	V
ʉ	V
ɔ	V
ø	V
œ	V
ɶ	V
ʊ	V
ɯ	V
ɤ	V
ʏ	V
aː	V
eː	V
iː	V
oː	V
uː	V
yː	V
əː	V
ɛː	V
ɔː	V
ɑː	V
æː	V
øː	V
ã	V
ẽ	V
ĩ	V
õ	V
ũ	V
ỹ	V
ai	V
au	V
ei	V
oi	V
ou	V
ai̯	V
au̯	V
ei̯	V
eu̯	V
oi̯	V
ou̯	V
ui̯	V
# 0: tones, boundaries, and other non-segmental marks
¹	0
²	0
³	0
⁴	0
⁵	0
˥	0
˦	0
˧	0
˨	0
˩	0
˩˥	0
˥˩	0
˧˥	0
˩˧	0
+	0
_	0
∅	0
.	0
)";

}  // namespace

std::string default_classmap_text() { return kDefaultClassmap; }

const ClassMap& default_classmap() {
    static const ClassMap map = parse_classmap(kDefaultClassmap, "<builtin>");
    return map;
}

SegmentCategory classify_segment(const std::string& token, const ClassMap& map) {
    const auto it = map.table.find(token);
    return it == map.table.end() ? SegmentCategory::ignore : it->second;
}

Skeleton skeleton(std::span<const std::string> segments, const ClassMap& map) {
    Skeleton out;
    std::size_t i = 0;
    for (; i < segments.size(); ++i) {
        if (classify_segment(segments[i], map) != SegmentCategory::ignore) break;
    }
    if (i < segments.size() && classify_segment(segments[i], map) == SegmentCategory::vowel) {
        out.first = SoundClass::H;  // word-initial vowel
        ++i;
    }
    for (; i < segments.size(); ++i) {
        const auto category = classify_segment(segments[i], map);
        if (!is_consonant(category)) continue;
        if (!out.first) {
            out.first = to_sound_class(category);
        } else {
            out.second = to_sound_class(category);
            break;
        }
    }
    return out;
}

std::string skeleton_string(const Skeleton& s) {
    std::string out;
    out += s.first ? letter_of(*s.first) : '-';
    out += s.second ? letter_of(*s.second) : '-';
    return out;
}

std::string sound_class_string(std::span<const std::string> segments, const ClassMap& map) {
    std::string out;
    for (const auto& token : segments) {
        const auto category = classify_segment(token, map);
        if (category == SegmentCategory::ignore) continue;
        out += is_consonant(category) ? letter_of(to_sound_class(category)) : 'V';
    }
    return out;
}

std::map<std::string, long> unknown_segment_tally(
    std::span<const std::vector<std::string>> segment_sequences, const ClassMap& map) {
    std::map<std::string, long> tally;
    for (const auto& segments : segment_sequences) {
        for (const auto& token : segments) {
            if (map.table.find(token) == map.table.end()) ++tally[token];
        }
    }
    return tally;
}

}  // namespace lingaff
