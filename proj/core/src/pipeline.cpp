#include "knothom/pipeline.hpp"

namespace knothom {

Window default_window(const BraidWord& w) {
    int c = (int)w.letters.size(), b = w.strands;
    int r = 2 * c + 2 * b;
    return {-r, r};
}

HomologyStage braid_dplus_stage(const BraidWord& w, const Potential* p,
                                const PipelineOptions& opt) {
    HomologyStage st;
    ClosedDiagram d = close_braid(w, opt.mark);
    st.assembled = assemble(d, p);
    if (opt.reduced) reduce_at_mark(st.assembled);
    st.shift = st.assembled.shift();
    st.simplified = opt.simplify ? simplify_complex(st.assembled.C) : st.assembled.C;

    Window table_win = opt.window.value_or(default_window(w));
    HomologyOptions ho;
    ho.threads = opt.threads;
    ho.window = {table_win.qmin - st.shift.q, table_win.qmax - st.shift.q};
    st.dplus = dplus_homology(st.simplified, ho, st.assembled.potential_degree);
    return st;
}

HomologyTable braid_homology(const BraidWord& w, const PipelineOptions& opt) {
    PipelineOptions cur = opt;
    Window win = opt.window.value_or(default_window(w));
    for (int round = 0;; ++round) {
        cur.window = win;
        HomologyStage st = braid_dplus_stage(w, nullptr, cur);
        HomologyTable t = iterated_homology(st.dplus, st.shift);
        // Unreduced tables and split diagrams carry infinite polynomial
        // towers; their support never clears a finite window.
        bool expect_finite = opt.reduced && st.assembled.deficiency == 0;
        if (opt.window.has_value() || !expect_finite || t.complete) return t;
        if (round >= opt.widen_rounds)
            throw WindowError("homology support does not clear the q-window");
        int span = win.qmax - win.qmin;
        win = {win.qmin - span / 2 - 4, win.qmax + span / 2 + 4};
    }
}

}  // namespace knothom
