from setuptools import setup, find_packages

__version__ = '0.1.0'

with open('README.md', encoding='utf-8') as f:
    readme = f.read()

if __name__ == "__main__":
    setup(
        name='chainmin',
        version=__version__,
        long_description=readme,
        long_description_content_type='text/markdown',
        description='Python package for counting and minimising k-chains of families in graded posets',
        author='Yankos',
        author_email='byanko55@gmail.com',
        url='https://github.com/byanko55/chainmin',
        install_requires=['numpy', 'matplotlib', 'scipy'],
        extras_require={'test': ['pytest', 'hypothesis']},
        packages=find_packages(include=['chainmin', 'chainmin.*']),
        entry_points={'console_scripts': ['chainmin=chainmin.cli:main']},
        keywords=['poset', 'chains', 'extremal combinatorics', 'Kleitman'],
        python_requires='>=3.7',
    )
