"""Source frontend: lexing, method extraction, preprocessing, AST lowering."""

from tsmin.frontend.astbuild import to_ast
from tsmin.frontend.extract import ExtractedMethod, extract_test_methods
from tsmin.frontend.preprocess import PreprocessConfig, preprocess

__all__ = [
    "ExtractedMethod",
    "PreprocessConfig",
    "extract_test_methods",
    "preprocess",
    "to_ast",
]
