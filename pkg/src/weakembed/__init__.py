"""weakembed: recognize weak embeddings of graphs into embedded graphs."""

__version__ = "0.1.0"
