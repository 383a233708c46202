"""Reference hyperparameters for the bundled benchmark datasets.

Chaos triples (q, b, epsilon) selected by five-fold cross-validated grid
search for each dataset; used as defaults by the CLI when no explicit values
are given.
"""

REFERENCE_CHAOS_PARAMS = {
    "iris": {"q": 0.141, "b": 0.499, "epsilon": 0.147},
    "ionosphere": {"q": 0.680, "b": 0.969, "epsilon": 0.164},
    "wine": {"q": 0.790, "b": 0.499, "epsilon": 0.262},
    "banknote": {"q": 0.080, "b": 0.250, "epsilon": 0.233},
    "haberman": {"q": 0.810, "b": 0.140, "epsilon": 0.003},
    "breast_cancer_wisconsin": {"q": 0.930, "b": 0.490, "epsilon": 0.159},
    "seeds": {"q": 0.020, "b": 0.070, "epsilon": 0.238},
}
