import pytest

from msetperm.bijections import (
    PAIR_112_122,
    PAIR_122_123,
    PAIR_122_132,
    DyckWord,
    LabelSequence,
    LatticePath,
    dyck_to_perm,
    enumerate_dyck_words,
    enumerate_paths,
    labels_to_path,
    labels_to_perm,
    path_to_labels,
    perm_to_dyck,
    perm_to_labels,
    simion_schmidt_f,
    simion_schmidt_g,
)
from msetperm.core import MultisetPermutation, avoids_all, left_to_right_minima
from msetperm.enumeration import list_avoiders
from msetperm.errors import (
    InvalidDyck,
    InvalidLabelSequence,
    InvalidPath,
    NotInDomain,
)
from msetperm.formulas import catalan, generalized_catalan, rothe

P = MultisetPermutation.parse


class TestDyck:
    def test_worked_example(self):
        assert str(dyck_to_perm(DyckWord("XYXXYXYY"))) == "44323121"
        assert str(perm_to_dyck(P("44323121"))) == "XYXXYXYY"

    def test_small_words(self):
        assert str(dyck_to_perm(DyckWord("XXYY"))) == "2121"
        assert str(dyck_to_perm(DyckWord("XYXY"))) == "2211"
        assert str(perm_to_dyck(P("11"))) == "XY"

    def test_invalid_words_rejected(self):
        with pytest.raises(InvalidDyck):
            DyckWord("XYY")
        with pytest.raises(InvalidDyck):
            DyckWord("YX")
        with pytest.raises(InvalidDyck):
            DyckWord("XZ")

    def test_domain_checked(self):
        with pytest.raises(NotInDomain):
            perm_to_dyck(P("1122"))  # contains 112
        with pytest.raises(NotInDomain):
            perm_to_dyck(P("111222"))  # m = 3

    def test_round_trip_and_image_exhaustive(self):
        for n in range(0, 7):
            words = list(enumerate_dyck_words(n))
            assert len(words) == catalan(n)
            avoiders = {s.letters for s in list_avoiders(n, 2, PAIR_112_122)}
            image = set()
            for w in words:
                sigma = dyck_to_perm(w)
                assert avoids_all(sigma, PAIR_112_122)
                assert str(perm_to_dyck(sigma)) == str(w)
                image.add(sigma.letters)
            assert image == avoiders


class TestLabels:
    def test_worked_example(self):
        sigma = P("443322421311")
        seq = perm_to_labels(sigma)
        assert seq.values == (1, 4, 7, 7, 7) and seq.m == 3
        assert labels_to_perm(seq) == sigma

    def test_single_letter(self):
        for m in (1, 2, 3):
            sigma = MultisetPermutation.regular([1] * m, 1, m)
            assert perm_to_labels(sigma).values == (1, m + 1)
            assert labels_to_perm(LabelSequence((1, m + 1), m)) == sigma

    def test_weakly_decreasing_case(self):
        assert perm_to_labels(P("2211")).values == (1, 3, 5)
        assert str(labels_to_perm(LabelSequence((1, 3, 5), 2))) == "2211"

    def test_bounds_validated(self):
        with pytest.raises(InvalidLabelSequence):
            LabelSequence((2, 3), 2)  # must start at 1
        with pytest.raises(InvalidLabelSequence):
            LabelSequence((1, 4), 2)  # second label must be m+1
        with pytest.raises(InvalidLabelSequence):
            LabelSequence((1, 3, 6), 2)  # exceeds previous + m
        with pytest.raises(InvalidLabelSequence):
            LabelSequence((1, 3, 2), 2)  # below m+1

    def test_domain_checked(self):
        with pytest.raises(NotInDomain):
            perm_to_labels(P("1122"))  # contains both 122 and 123... 122 first

    def test_round_trip_exhaustive(self):
        for n, m in ((1, 2), (2, 2), (3, 2), (4, 2), (5, 2), (6, 2),
                     (1, 3), (2, 3), (3, 3), (4, 3), (2, 4), (3, 4),
                     (2, 5), (2, 6), (1, 12)):
            avoiders = list_avoiders(n, m, PAIR_122_123)
            assert len(avoiders) == generalized_catalan(n, m)
            seen = set()
            for sigma in avoiders:
                seq = perm_to_labels(sigma)
                seen.add(seq.values)
                back = labels_to_perm(seq)
                assert back == sigma
                assert avoids_all(back, PAIR_122_123)
            assert len(seen) == len(avoiders)


class TestPaths:
    def test_figure_path(self):
        path = LatticePath("UU" + "RRR" + "U" + "RRR" + "U" + "RRRRRRR", 3)
        assert path_to_labels(path).values == (1, 4, 7, 7, 7)

    def test_unique_small_path(self):
        seq = LabelSequence((1, 3), 2)
        assert str(labels_to_path(seq)) == "URRR"
        assert path_to_labels(LatticePath("URRR", 2)).values == (1, 3)

    def test_path_validation(self):
        with pytest.raises(InvalidPath):
            LatticePath("RU", 1)  # touches x = y*1 + 1 at (1,0) before the end
        with pytest.raises(InvalidPath):
            LatticePath("UURR", 1)  # wrong endpoint
        with pytest.raises(InvalidPath):
            LatticePath("UXRR", 1)

    def test_round_trip_exhaustive(self):
        for m in (1, 2, 3):
            for n in range(0, 6):
                paths = list(enumerate_paths(n, m))
                assert len(paths) == rothe(1, m + 1, n) == generalized_catalan(n, m)
                for p in paths:
                    seq = path_to_labels(p)
                    assert str(labels_to_path(seq)) == str(p)

    def test_path_to_perm_composition(self):
        # full composition: paths -> label sequences -> permutations is a
        # bijection onto the avoiders
        n, m = 3, 2
        perms = {labels_to_perm(path_to_labels(p)).letters
                 for p in enumerate_paths(n, m)}
        assert perms == {s.letters for s in list_avoiders(n, m, PAIR_122_123)}


class TestMinimaMap:
    def test_worked_example(self):
        assert str(simion_schmidt_f(P("43421231"))) == "43421321"
        assert str(simion_schmidt_g(P("43421321"))) == "43421231"

    def test_fixed_point(self):
        assert str(simion_schmidt_f(P("2211"))) == "2211"

    def test_domain_checked(self):
        with pytest.raises(NotInDomain):
            simion_schmidt_f(P("1322"))  # contains 122
        with pytest.raises(NotInDomain):
            simion_schmidt_g(P("112233"))  # contains 123

    def test_round_trip_minima_and_images_exhaustive(self):
        for n, m in ((1, 2), (2, 2), (3, 2), (4, 2), (5, 2), (6, 2),
                     (2, 3), (3, 3), (4, 3), (2, 4), (3, 4), (2, 5), (2, 6)):
            sources = list_avoiders(n, m, PAIR_122_132)
            targets = {s.letters for s in list_avoiders(n, m, PAIR_122_123)}
            image = set()
            for sigma in sources:
                tau = simion_schmidt_f(sigma)
                assert avoids_all(tau, PAIR_122_123)
                assert left_to_right_minima(tau) == left_to_right_minima(sigma)
                mins = left_to_right_minima(sigma)
                assert [tau.letters[i - 1] for i in mins] == \
                    [sigma.letters[i - 1] for i in mins]
                assert simion_schmidt_g(tau) == sigma
                image.add(tau.letters)
            assert image == targets

    def test_forced_minima_block_structure(self):
        # in any 122-avoider, the first m-1 copies of n, n-1, ..., 1 appear
        # in exactly that order and every one of them is a minimum
        from msetperm.core import PatternSet
        for n, m in ((3, 2), (2, 3), (4, 2), (2, 4), (3, 3)):
            expected = [v for v in range(n, 0, -1) for _ in range(m - 1)]
            for sigma in list_avoiders(n, m, PatternSet.of("122")):
                minima = set(left_to_right_minima(sigma))
                seen = {v: 0 for v in range(1, n + 1)}
                early = []
                for pos, v in enumerate(sigma.letters, start=1):
                    seen[v] += 1
                    if seen[v] <= m - 1:
                        early.append(v)
                        assert pos in minima
                assert early == expected
