"""Classifier families behind one fit/predict contract. Each family registers itself on import."""
from src.classifiers.registry import ClassifierModel, dump_model, family_names, fit_model, get_family

# Import families so they register themselves
import src.classifiers.knn  # noqa: F401, E402
import src.classifiers.logistic  # noqa: F401, E402
import src.classifiers.naive_bayes  # noqa: F401, E402
import src.classifiers.tree  # noqa: F401, E402

__all__ = ["ClassifierModel", "dump_model", "family_names", "fit_model", "get_family"]
