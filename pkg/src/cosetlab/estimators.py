"""scikit-learn style wrappers around the analyses.

``fit`` takes a :class:`~cosetlab.sets.GroupSet` (or a list of them for
:class:`SetInvariants`) and stores results in trailing-underscore
attributes; hyper-parameters round-trip through ``get_params``/``set_params``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .growth import growth_stats
from .sets import GroupSet, translate_set
from .stability import DEFAULT_LADDER_CAP, max_ladder, weak_normality_degree
from .structure import theorem_a_search, theorem_b_search
from .subgroups import DEFAULT_MAX_SUBGROUPS
from .synthesis import DEFAULT_MAX_COMPLEXITY, boolean_synthesis
from .validation import check_elements, check_groupset, check_groupsets


class SetInvariants(TransformerMixin, BaseEstimator):
    """Map each set to the row ``[|A|, doubling, tripling, max_ladder, wn_degree]``.

    Stateless; ``fit`` only validates. Rationals become floats here, so use
    :func:`cosetlab.growth.growth_stats` when exact values matter.
    """

    feature_names = ("card", "doubling", "tripling", "max_ladder", "wn_degree")

    def __init__(self, cap=DEFAULT_LADDER_CAP):
        self.cap = cap

    def fit(self, X, y=None):
        check_groupsets(X)
        self.n_features_out_ = len(self.feature_names)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        rows = []
        for A in check_groupsets(X):
            g = growth_stats(A)
            rows.append([g.set_card, float(g.doubling), float(g.tripling),
                         max_ladder(A, self.cap)[0], weak_normality_degree(A).degree])
        return np.array(rows, dtype=float).reshape(-1, len(self.feature_names))

    def get_feature_names_out(self, input_features=None):
        return np.array(self.feature_names, dtype=object)


class CosetStructureSearch(BaseEstimator):
    """Subgroup ``H`` inside ``A*A^-1`` and transversal approximating ``A``.

    After ``fit``: ``structures_``, ``pareto_``, ``selected_`` (fewest
    cosets with ``|A ^ C'*H| < eps*|H|``), ``empirical_n_`` and
    ``approximation_`` (the set ``C'*H`` of ``selected_``).
    """

    def __init__(self, eps=1, max_subgroups=DEFAULT_MAX_SUBGROUPS):
        self.eps = eps
        self.max_subgroups = max_subgroups

    def fit(self, X, y=None):
        A = check_groupset(X)
        res = theorem_a_search(A, eps=self.eps, max_subgroups=self.max_subgroups)
        self.structures_ = res.structures
        self.pareto_ = res.pareto
        self.selected_ = res.selected
        self.best_ratio_ = res.best_ratio
        self.empirical_n_ = res.empirical_n
        approx = A.group.empty_set()
        if res.selected is not None:
            for c in res.selected.C_prime:
                approx = approx | translate_set(c, res.selected.H)
        self.approximation_ = approx
        self.group_ = A.group
        return self

    def predict(self, elements):
        """1 for elements of ``C'*H``, else 0."""
        check_is_fitted(self, "approximation_")
        idx = check_elements(elements, self.group_)
        return self.approximation_.mask[idx].astype(int)

    def score(self, X, y=None):
        """``1 - |X ^ C'*H| / |X|``."""
        check_is_fitted(self, "approximation_")
        A = check_groupset(X)
        return 1.0 - (A ^ self.approximation_).card / A.card


class CosetCover(BaseEstimator):
    """Greedy cover of ``A`` by cosets ``g+H``, ``H`` inside ``A-A`` (abelian groups).

    After ``fit``: ``cover_`` as ``(g, H)`` pairs, ``n_`` and
    ``expressions_`` writing each ``H`` over translates of ``A``.
    """

    def __init__(self, max_complexity=DEFAULT_MAX_COMPLEXITY, containment="inside",
                 max_subgroups=DEFAULT_MAX_SUBGROUPS):
        self.max_complexity = max_complexity
        self.containment = containment
        self.max_subgroups = max_subgroups

    def fit(self, X, y=None):
        A = check_groupset(X, abelian=True)
        res = theorem_b_search(A, max_complexity=self.max_complexity, containment=self.containment,
                               max_subgroups=self.max_subgroups)
        self.cover_ = res.cover
        self.expressions_ = res.expressions
        self.n_ = res.n
        self.group_ = A.group
        return self

    def predict(self, elements):
        """Index of the first cover coset holding each element, -1 if none."""
        check_is_fitted(self, "cover_")
        idx = check_elements(elements, self.group_)
        out = np.full(idx.shape, -1, dtype=int)
        for k, (g, H) in reversed(list(enumerate(self.cover_))):
            out[translate_set(g, H).mask[idx]] = k
        return out


class TranslateSynthesizer(TransformerMixin, BaseEstimator):
    """Fit on ``A``; ``transform`` maps target sets to minimal expressions over translates of ``A``."""

    def __init__(self, max_complexity=DEFAULT_MAX_COMPLEXITY):
        self.max_complexity = max_complexity

    def fit(self, X, y=None):
        self.A_ = check_groupset(X, abelian=True)
        return self

    def transform(self, X):
        check_is_fitted(self, "A_")
        targets = [X] if isinstance(X, GroupSet) else X
        return [boolean_synthesis(check_groupset(t, allow_empty=True), self.A_, self.max_complexity).expr
                for t in targets]
