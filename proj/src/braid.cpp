#include "dynnikov/braid.hpp"

#include <charconv>
#include <sstream>

#include "dynnikov/errors.hpp"

namespace dyn {

namespace {

void check_strands(int n) {
    if (n < 3) throw DomainError("strand count must be at least 3, got " + std::to_string(n));
}

}  // namespace

BraidWord::BraidWord(int strands, std::vector<Letter> letters)
    : n_(strands), letters_(std::move(letters)) {
    check_strands(n_);
    for (const auto& l : letters_) {
        if (l.index < 1 || l.index > n_ - 1)
            throw DomainError("generator index " + std::to_string(l.index) + " out of range for " +
                              std::to_string(n_) + " strands");
        if (l.sign != 1 && l.sign != -1) throw DomainError("letter sign must be +1 or -1");
    }
}

std::string BraidWord::render() const {
    std::string out;
    for (const auto& l : letters_) {
        if (!out.empty()) out += ' ';
        out += std::to_string(l.sign * l.index);
    }
    return out;
}

BraidWord parse_braid(const std::string& text, int strands) {
    check_strands(strands);
    std::istringstream in(text);
    std::vector<Letter> letters;
    std::string tok;
    while (in >> tok) {
        long k = 0;
        const char* first = tok.data();
        if (*first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), k);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("bad braid token '" + tok + "'");
        if (k == 0) throw ParseError("zero is not a generator");
        long idx = k < 0 ? -k : k;
        if (idx > strands - 1)
            throw ParseError("generator " + tok + " out of range for " + std::to_string(strands) +
                             " strands");
        letters.push_back({int(idx), k < 0 ? -1 : 1});
    }
    return BraidWord(strands, std::move(letters));
}

BraidWord compose(const BraidWord& w1, const BraidWord& w2) {
    if (w1.strands() != w2.strands()) throw DomainError("strand mismatch in compose");
    auto letters = w1.letters();
    letters.insert(letters.end(), w2.letters().begin(), w2.letters().end());
    return BraidWord(w1.strands(), std::move(letters));
}

BraidWord inverse(const BraidWord& w) {
    std::vector<Letter> letters(w.letters().rbegin(), w.letters().rend());
    for (auto& l : letters) l.sign = -l.sign;
    return BraidWord(w.strands(), std::move(letters));
}

BraidWord power(const BraidWord& w, int m) {
    if (m < 0) return power(inverse(w), -m);
    std::vector<Letter> letters;
    letters.reserve(w.size() * std::size_t(m));
    for (int i = 0; i < m; ++i) letters.insert(letters.end(), w.letters().begin(), w.letters().end());
    return BraidWord(w.strands(), std::move(letters));
}

std::vector<BraidWord> parse_braid_file(const std::string& contents) {
    std::vector<BraidWord> out;
    std::istringstream in(contents);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head.rfind("n=", 0) != 0)
            throw ParseError("line " + std::to_string(lineno) + ": expected n=<strands>");
        int n = 0;
        try {
            n = std::stoi(head.substr(2));
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad strand count");
        }
        std::string rest;
        std::getline(ls, rest);
        out.push_back(parse_braid(rest, n));
    }
    return out;
}

}  // namespace dyn
