import os

from setuptools import setup, find_packages

with open("VERSION", "r", encoding="utf-8") as f:
    __version__ = f.read().strip()

readme_path = "README.md"
long_description = open(readme_path, "r", encoding="utf-8").read() if os.path.exists(readme_path) else ""

setup(
    name="confalg",
    version=__version__,
    author="Bartosz Sękiewicz",
    author_email="bartosz.pawel.sekiewicz@gmail.com",
    description="Exact computations with conformal algebras and their homotopy analogues",
    long_description=long_description,
    long_description_content_type="text/markdown",
    keywords="conformal algebra, lambda bracket, A-infinity, L-infinity, Hochschild cohomology, homotopy transfer",
    license="MIT",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=find_packages(include=["confalg", "confalg.*"]),
    python_requires=">=3.10",
    install_requires=[
        "pandas==2.2.*",
        "sympy==1.13.*",
    ],
    include_package_data=True,
    package_data={
        "confalg": ["data/manifests/*.json"],
    },
    entry_points={
        "console_scripts": ["confalg=confalg.cli:main"],
    },
)
