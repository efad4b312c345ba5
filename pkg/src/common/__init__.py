""" Set of tools and modules for common usages """
