#!/usr/bin/env python

__author__ = "berklab developers"
__status__ = "Development"

import re
from setuptools import setup, find_packages
with open("README.md", "r") as fh:
    long_description = fh.read()
with open("berklab/__init__.py", "r") as fh:
    version = re.search(r'__version__ = "([^"]+)"', fh.read()).group(1)

setup(
    name='berklab',
    version=version,
    description='Exact experiments on Berkovich line dynamics of rational maps',
    zip_safe=False,
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["examples", "examples.*"]),
    python_requires=">=3.8",
    install_requires=[
        "sympy>=1.9",
        "omegaconf>=2.1",
        "dask>=2021.11",
        "pandas>=1.5",
        "tqdm",
    ],
    extras_require={
        "dev": ["pytest", "flake8", "coverage"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    entry_points={
        'console_scripts': [
            'berklab = berklab.console.berklab_pipeline:main',
        ]
    },
)
