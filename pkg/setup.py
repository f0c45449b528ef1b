from setuptools import setup, find_packages

with open("PIP_Package.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="e36verify",
    version="0.1.0",
    description="Exact verification of degenerate E(3,6) module computations",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=['e36verify', 'e36verify.*']),
    include_package_data=True,
    install_requires=[
        "click",
        "pyyaml",
        "tqdm",
        "pandas",
        "numpy",
        "matplotlib",
        "sympy",
        "tabulate",
    ],
    extras_require={
        "test": ["pytest"],
    },
    entry_points={
        "console_scripts": [
            "e36verify=e36verify.cli:cli",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
)
