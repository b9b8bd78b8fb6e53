"""opkoszul: exact-arithmetic workbench for quadratic set-operads generated
by one binary element: catalog enumeration, dimension closures, generating
series and Koszul duality checks."""

__version__ = "0.1.0"
