from setuptools import setup, find_packages

setup(
    name="crossed_product",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.17",                        # object-dtype matmul
        "cryptography>=3.1",
        "python-dotenv>=0.19",
    ],
    extras_require={
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "crossed-product=crossed_product.cli:main",
        ],
    },
    description="Exact symbolic engine for crossed tensor products, Wick algebras and Fock representations",
    keywords="crossed product, wick algebra, fock space, quantum weyl algebra, hecke",
    url="",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
)
