import os
import sys

from setuptools import setup

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from ccgtune import __version__

setup(
    name="ccgtune",
    version=__version__,
    description="Intonation-aware question answering with combinatory "
                "categorial grammar",
    license="MIT",
    packages=["ccgtune", "ccgtune.tests"],
    package_data={"ccgtune": ["data/*.json", "data/*.kb"],
                  "ccgtune.tests": ["data/*.kb"]},
    python_requires=">=3.7",
    install_requires=[
        "blessed<1.40; sys_platform != 'win32'",
        "jsonschema>=3.0.0",
        "nltk>=3.5",
    ],
    entry_points={
        "console_scripts": ["ccgtune=ccgtune.cli:main"],
    },
    long_description=open("README.rst").read(),
    classifiers=[
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Environment :: Console",
        "Development Status :: 1 - Planning",
        "Operating System :: POSIX",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        "Topic :: Text Processing :: Linguistic",
    ],
    keywords=["ccg", "intonation", "prosody", "information structure",
              "speech synthesis", "generation"]
)
