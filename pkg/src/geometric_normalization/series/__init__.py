# Series Module
