from setuptools import setup, find_packages

setup(
    name='arithlab-toolkit',
    version='0.3.0',
    packages=find_packages(exclude=['tests']),
    include_package_data=True,
    package_data={'arithlab_toolkit': ['data/*.json']},
    install_requires=[
        'numpy',
        'mpmath',
        'networkx',
        'tqdm',
        'python-dotenv>=1.0.0',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'arithlab=arithlab_toolkit.cli:main'
        ]
    },
    description='Exact-arithmetic laboratory: modular forms, definite quaternion algebras, '
                'elliptic curves over Q, Fourier analysis on finite groups, additive '
                'combinatorics, expanders and heights, each result checked against its invariants.',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    classifiers=[
        'Programming Language :: Python :: 3',
        'Operating System :: OS Independent',
    ],
    python_requires='>=3.8',
)
