"""Shared corpus builders for the test-suite."""

from solvlen import atlas


def corpus_perm_groups():
    """Permutation groups of order <= 10^5 with independently known orders.

    Used for the BFS-vs-BSGS oracle and the lemma sweep; each entry is
    (label, handle, expected order).
    """
    c2, c3 = atlas.cyclic(2), atlas.cyclic(3)
    s3, s4 = atlas.sym(3), atlas.sym(4)
    groups = [
        ("cyclic(2)", atlas.cyclic(2), 2),
        ("cyclic(3)", atlas.cyclic(3), 3),
        ("cyclic(6)", atlas.cyclic(6), 6),
        ("cyclic(12)", atlas.cyclic(12), 12),
        ("sym(3)", atlas.sym(3), 6),
        ("sym(4)", atlas.sym(4), 24),
        ("sym(5)", atlas.sym(5), 120),
        ("sym(6)", atlas.sym(6), 720),
        ("sym(7)", atlas.sym(7), 5040),
        ("metacyclic(2,3)", atlas.metacyclic(2, 3), 6),
        ("metacyclic(2,5)", atlas.metacyclic(2, 5), 10),
        ("metacyclic(2,7)", atlas.metacyclic(2, 7), 14),
        ("metacyclic(3,7)", atlas.metacyclic(3, 7), 21),
        ("metacyclic(3,13)", atlas.metacyclic(3, 13), 39),
        ("metacyclic(5,11)", atlas.metacyclic(5, 11), 55),
        ("wr(c2,c3)", atlas.wreath(c2, c3), 24),
        ("wr(c3,c3)", atlas.wreath(c3, c3), 81),
        ("wr(s3,c2)", atlas.wreath(s3, c2), 72),
        ("wr(c2,s4)", atlas.wreath(c2, s4), 2 ** 4 * 24),
        ("wr(s4,c2)", atlas.wreath(s4, c2), 24 ** 2 * 2),
        ("direct(s4,c5)", atlas.direct(s4, atlas.cyclic(5)), 120),
        ("regular(metacyclic(2,3))", atlas.regular(atlas.metacyclic(2, 3)), 6),
        ("natsd(s3mat(5),2)", atlas.natural_semidirect(atlas.s3mat(5), 2), 150),
        ("gsp(gl(2,3),3,1)", atlas.gsp_extension(atlas.gl(2, 3), 3, 1), 1296),
    ]
    return groups
