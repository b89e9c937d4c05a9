// Acceptance suite: runs the full verification corpus and prints one
// PASS/FAIL line per criterion.  Exits nonzero when any criterion fails.

#include <cstdio>
#include <cstring>

#include "branchflip/verify.hpp"

int main(int argc, char** argv) {
    branchflip::CorpusSpec spec;
    if (argc > 1 && std::strcmp(argv[1], "--quick") == 0) spec = branchflip::quick_corpus();
    branchflip::VerifyReport rep = branchflip::verify_theorems(spec);
    int criterion = 1;
    bool all = true;
    for (const branchflip::VerifyRow& r : rep.rows) {
        std::printf("criterion %d %-32s [%s] %s — %s\n", criterion++, r.claim.c_str(),
                    r.kind.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return all ? 0 : 1;
}
