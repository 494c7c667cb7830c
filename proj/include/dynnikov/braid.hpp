#pragma once

#include <string>
#include <vector>

namespace dyn {

struct Letter {
    int index = 1;  // 1 <= index <= n-1
    int sign = 1;   // +1 or -1
    bool operator==(const Letter&) const = default;
};

// Letters are stored in reading order; the leftmost letter acts first.
class BraidWord {
public:
    BraidWord() = default;
    BraidWord(int strands, std::vector<Letter> letters);

    int strands() const { return n_; }
    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    std::string render() const;
    bool operator==(const BraidWord&) const = default;

private:
    int n_ = 3;
    std::vector<Letter> letters_;
};

BraidWord parse_braid(const std::string& text, int strands);
BraidWord compose(const BraidWord& w1, const BraidWord& w2);
BraidWord inverse(const BraidWord& w);
BraidWord power(const BraidWord& w, int m);

// One braid per line: "n=<strands> k1 k2 ...". Blank lines and '#' comments skipped.
std::vector<BraidWord> parse_braid_file(const std::string& contents);

}  // namespace dyn
